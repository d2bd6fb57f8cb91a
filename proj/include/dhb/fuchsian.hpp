#pragma once

// Fuchsian potentials Q(z) = sum alpha_j/(z-a_j)^2 + sum beta_j/((z-a_j)(z-a_{j+1})),
// the Darboux-Halphen-Brioschi systems they generate, cross-ratio constraints and
// the Halphen-II / hypergeometric parameter maps.

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "dhb/errors.hpp"
#include "dhb/linalg.hpp"
#include "dhb/polynomial.hpp"
#include "dhb/quadratic.hpp"
#include "dhb/scalar.hpp"

namespace dhb {

template <ExactField F>
struct FuchsianData {
  std::vector<F> poles;  // a_1..a_m, order matters for the beta chain
  std::vector<F> alpha;  // alpha_1..alpha_m
  std::vector<F> beta;   // beta_1..beta_{m-1}

  std::size_t m() const { return poles.size(); }

  void validate() const {
    if (poles.size() < 2) throw InvalidInput("Fuchsian data needs at least two poles");
    if (alpha.size() != poles.size()) throw DimensionMismatch("alpha must have one entry per pole");
    if (beta.size() + 1 != poles.size()) throw DimensionMismatch("beta must have m-1 entries");
    for (std::size_t i = 0; i < poles.size(); ++i)
      for (std::size_t j = i + 1; j < poles.size(); ++j)
        if (poles[i] == poles[j]) throw InvalidInput("duplicate pole");
  }

  friend bool operator==(const FuchsianData&, const FuchsianData&) = default;
};

template <ExactField F>
struct GDHBSystem {
  std::size_t m = 0;
  QuadraticSystem<F> system;               // variables X_0..X_m
  std::vector<QuadricForm<F>> constraints;  // cross-ratio relations, empty for m = 2
};

template <class F>
struct HGParams {
  F alpha, beta, gamma;
};
template <class F>
struct HalphenABC {
  F a, b, c;
  friend bool operator==(const HalphenABC&, const HalphenABC&) = default;
};
template <class F>
struct Exponents {
  F p, q, r;
  friend bool operator==(const Exponents&, const Exponents&) = default;
};

/// A point of the projective line; nullopt stands for infinity.
template <class F>
using ProjectivePoint = std::optional<F>;

// ---------------------------------------------------------------------------
// gDHB construction

/// The shared quadratic S(X) = sum alpha_j (X_j-X_0)^2 + sum beta_j (X_j-X_0)(X_{j+1}-X_0).
template <ExactField F>
QuadricForm<F> gdhb_shared_form(const std::vector<F>& alpha, const std::vector<F>& beta) {
  const std::size_t m = alpha.size();
  if (beta.size() + 1 != m) throw DimensionMismatch("beta must have m-1 entries");
  QuadricForm<F> s(m + 1);
  const auto diff = [m](std::size_t j) {
    Vector<F> v(m + 1, F(0));
    v[j] = F(1);
    v[0] = F(-1);
    return v;
  };
  for (std::size_t j = 1; j <= m; ++j) s.add_product(diff(j), diff(j), alpha[j - 1]);
  for (std::size_t j = 1; j < m; ++j) s.add_product(diff(j), diff(j + 1), beta[j - 1]);
  return s;
}

/// dX_k/dtau = X_k^2 - S(X), k = 0..m.  The poles enter only through the constraints.
template <ExactField F>
QuadraticSystem<F> gdhb_tensor(const std::vector<F>& alpha, const std::vector<F>& beta) {
  const QuadricForm<F> s = gdhb_shared_form(alpha, beta);
  const std::size_t n = s.dim();
  Tensor3<F> a(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) a(i, j, k) = (i == j && j == k ? F(1) : F(0)) - s(j, k);
  return QuadraticSystem<F>(std::move(a));
}

template <ExactField F>
QuadraticSystem<F> gdhb_tensor(const FuchsianData<F>& fd) {
  fd.validate();
  return gdhb_tensor(fd.alpha, fd.beta);
}

/// (a, b, c, d) = (a-b)(c-d) / ((a-d)(c-b)), with at most one argument at infinity.
template <ExactField F>
F cross_ratio(const ProjectivePoint<F>& a, const ProjectivePoint<F>& b, const ProjectivePoint<F>& c,
              const ProjectivePoint<F>& d) {
  const int infinite = !a + !b + !c + !d;
  if (infinite > 1) throw DomainError("cross ratio with more than one point at infinity");
  // Each point occurs in one numerator and one denominator factor; a factor
  // containing infinity is dropped together with its partner.
  const auto factor = [](const ProjectivePoint<F>& x, const ProjectivePoint<F>& y) -> std::optional<F> {
    if (!x || !y) return std::nullopt;
    return *x - *y;
  };
  const auto n1 = factor(a, b), n2 = factor(c, d), d1 = factor(a, d), d2 = factor(c, b);
  F num(1), den(1);
  if (n1) num *= *n1;
  if (n2) num *= *n2;
  if (d1) den *= *d1;
  if (d2) den *= *d2;
  if (is_zero(den)) throw DomainError("cross ratio is undefined for this configuration");
  return num / den;
}

/// Scales a quadric so that its first nonzero entry (row-major) is 1.
template <ExactField F>
QuadricForm<F> canonicalize(const QuadricForm<F>& q) {
  const std::size_t n = q.dim();
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = 0; k < n; ++k)
      if (!is_zero(q(j, k))) {
        const F inv = F(1) / q(j, k);
        return QuadricForm<F>(q.matrix().template map<F>([&](const F& x) { return x * inv; }));
      }
  return q;
}

template <ExactField F>
bool proportional(const QuadricForm<F>& p, const QuadricForm<F>& q) {
  return canonicalize(p) == canonicalize(q);
}

/// Quadric of the relation (X_j, X_k, X_l, X_n) = (a_j, a_k, a_l, a_n) with
/// denominators cleared.  points[i] is the point attached to X_i.
template <ExactField F>
QuadricForm<F> cross_ratio_quadric(const std::vector<ProjectivePoint<F>>& points, std::size_t j, std::size_t k,
                                   std::size_t l, std::size_t n) {
  const std::size_t dim = points.size();
  const auto diff = [&](std::size_t p, std::size_t q) {
    Vector<F> v(dim, F(0));
    v[p] += F(1);
    v[q] -= F(1);
    return v;
  };
  const auto gap = [&](std::size_t p, std::size_t q) -> F {
    if (!points[p] || !points[q]) return F(1);
    return *points[p] - *points[q];
  };
  // (X_j-X_k)(X_l-X_n)(a_j-a_n)(a_l-a_k) - (X_j-X_n)(X_l-X_k)(a_j-a_k)(a_l-a_n)
  QuadricForm<F> out(dim);
  out.add_product(diff(j, k), diff(l, n), gap(j, n) * gap(l, k));
  out.add_product(diff(j, n), diff(l, k), -(gap(j, k) * gap(l, n)));
  return out;
}

/// Constraints for the Brioschi variables X_0..X_m, X_0 paired with infinity.
/// By default the defining tuples (0, j, j+1, j+2); all 4-subsets on request.
template <ExactField F>
std::vector<QuadricForm<F>> anharmonic_constraints(const std::vector<F>& poles, bool all_tuples = false) {
  const std::size_t m = poles.size();
  if (m < 3) return {};
  std::vector<ProjectivePoint<F>> points{std::nullopt};
  for (const F& a : poles) points.emplace_back(a);
  std::vector<QuadricForm<F>> out;
  if (!all_tuples) {
    for (std::size_t j = 1; j + 2 <= m; ++j) out.push_back(cross_ratio_quadric(points, 0, j, j + 1, j + 2));
    return out;
  }
  for (std::size_t a = 0; a <= m; ++a)
    for (std::size_t b = a + 1; b <= m; ++b)
      for (std::size_t c = b + 1; c <= m; ++c)
        for (std::size_t d = c + 1; d <= m; ++d) out.push_back(cross_ratio_quadric(points, a, b, c, d));
  return out;
}

template <ExactField F>
GDHBSystem<F> build_gdhb(const FuchsianData<F>& fd) {
  fd.validate();
  return {fd.m(), gdhb_tensor(fd), anharmonic_constraints(fd.poles)};
}

// ---------------------------------------------------------------------------
// Potentials

template <ExactField F>
RationalFunction<F> q_rational_from_fuchsian(const FuchsianData<F>& fd) {
  fd.validate();
  using P = Polynomial<F>;
  RationalFunction<F> q;
  for (std::size_t j = 0; j < fd.m(); ++j) {
    const P lin = P::linear_root(fd.poles[j]);
    q = q + RationalFunction<F>(P(fd.alpha[j]), lin * lin);
  }
  for (std::size_t j = 0; j + 1 < fd.m(); ++j)
    q = q + RationalFunction<F>(P(fd.beta[j]), P::linear_root(fd.poles[j]) * P::linear_root(fd.poles[j + 1]));
  return q;
}

/// Reads (alpha, beta) of Q with respect to the ordered poles.  Throws
/// NotRepresentable when Q has other poles, poles of order > 2, or is not O(z^-2).
template <ExactField F>
FuchsianData<F> fuchsian_from_q(const RationalFunction<F>& q, const std::vector<F>& poles) {
  using P = Polynomial<F>;
  if (poles.size() < 2) throw InvalidInput("Fuchsian data needs at least two poles");
  FuchsianData<F> fd{poles, std::vector<F>(poles.size(), F(0)), std::vector<F>(poles.size() - 1, F(0))};
  fd.validate();
  if (q.is_zero()) return fd;
  if (q.num().degree() > q.den().degree() - 2) throw NotRepresentable("potential is not O(z^-2) at infinity");

  P rest = q.den();
  std::vector<F> residues(poles.size(), F(0));
  for (std::size_t j = 0; j < poles.size(); ++j) {
    const P lin = P::linear_root(poles[j]);
    int order = 0;
    for (;;) {
      auto [quot, rem] = P::divmod(rest, lin);
      if (!rem.is_zero()) break;
      rest = std::move(quot);
      ++order;
    }
    if (order > 2) throw NotRepresentable("pole of order greater than two");
    if (order == 0) continue;
    // The cofactor of (z-a)^order in the full denominator.
    P cof = q.den();
    for (int k = 0; k < order; ++k) cof = P::divmod(cof, lin).first;
    const F& a = poles[j];
    const F ca = cof(a);
    const F na = q.num()(a);
    if (order == 2) {
      fd.alpha[j] = na / ca;
      const F dn = q.num().derivative()(a), dc = cof.derivative()(a);
      residues[j] = (dn * ca - na * dc) / (ca * ca);
    } else {
      residues[j] = na / ca;
    }
  }
  if (rest.degree() > 0) throw NotRepresentable("potential has poles outside the listed set");

  F total(0);
  for (const F& r : residues) total += r;
  if (!is_zero(total)) throw NotRepresentable("simple-pole residues do not sum to zero");

  F running(0);
  for (std::size_t j = 0; j + 1 < poles.size(); ++j) {
    running += residues[j];
    fd.beta[j] = (poles[j] - poles[j + 1]) * running;
  }
  if (!(q_rational_from_fuchsian(fd) == q)) throw NotRepresentable("potential is not of the pole-chain form");
  return fd;
}

/// y'' + p y' + q y = 0  becomes  Y'' + Q Y = 0 with Q = q - p'/2 - p^2/4.
template <ExactField F>
RationalFunction<F> normal_form_reduce(const RationalFunction<F>& p, const RationalFunction<F>& q) {
  const RationalFunction<F> half(F(1) / F(2)), quarter(F(1) / F(4));
  return q - half * p.derivative() - quarter * p * p;
}

/// p, q of the hypergeometric equation z(1-z)y'' + (g - (a+b+1)z)y' - ab y = 0.
template <ExactField F>
std::pair<RationalFunction<F>, RationalFunction<F>> hypergeometric_pq(const HGParams<F>& hg) {
  using P = Polynomial<F>;
  using R = RationalFunction<F>;
  const P z = P::linear_root(F(0));
  const P zm1 = P::linear_root(F(1));
  R p = R(P(hg.gamma), z) + R(P(hg.alpha + hg.beta + F(1) - hg.gamma), zm1);
  R q = R(P(hg.alpha * hg.beta), z * zm1);
  return {p, q};
}

// ---------------------------------------------------------------------------
// Halphen's second equation and the hypergeometric parameter maps

/// dX/dtau = X^2 + c(X-Y)^2 + b(Z-X)^2 + a(Y-Z)^2 and cyclically for Y, Z.
template <ExactField F>
QuadraticSystem<F> halphen2_from_abc(const HalphenABC<F>& abc) {
  QuadricForm<F> shared(3);
  const Vector<F> xy{F(1), F(-1), F(0)}, zx{F(-1), F(0), F(1)}, yz{F(0), F(1), F(-1)};
  shared.add_product(xy, xy, abc.c);
  shared.add_product(zx, zx, abc.b);
  shared.add_product(yz, yz, abc.a);
  std::vector<QuadricForm<F>> forms(3, shared);
  for (std::size_t i = 0; i < 3; ++i) forms[i].add_monomial(i, i, F(1));
  return QuadraticSystem<F>::from_forms(forms);
}

template <class F>
HalphenABC<F> abc_from_hypergeometric(const HGParams<F>& hg) {
  const F& al = hg.alpha;
  const F& be = hg.beta;
  const F& ga = hg.gamma;
  const F quarter = F(1) / F(4);
  return {quarter * (F(2) * al * be - ga - al * ga - be * ga + ga * ga),
          quarter * (al * al + be * be + ga - al * ga - be * ga - F(1)),
          quarter * (F(-2) * al * be - ga + al * ga + be * ga)};
}

template <class F>
Exponents<F> exponents(const HGParams<F>& hg) {
  return {F(1) - hg.gamma, -hg.alpha - hg.beta + hg.gamma, hg.alpha - hg.beta};
}

/// The e-basis table: e_1^2 = (1+4(b+c))e, e_1 e_2 = -e_3 - 4c e, ... with e = e_1+e_2+e_3.
template <ExactField F>
Algebra<F> halphen2_algebra_table(const HalphenABC<F>& abc) {
  const F four(4);
  const Vector<F> e{F(1), F(1), F(1)};
  const auto scaled = [](const Vector<F>& v, const F& s) {
    Vector<F> out(v);
    for (F& x : out) x *= s;
    return out;
  };
  const auto cross = [&](std::size_t minus, const F& coef) {
    Vector<F> out = scaled(e, -four * coef);
    out[minus] -= F(1);
    return out;
  };
  Tensor3<F> t(3);
  const auto put = [&t](std::size_t j, std::size_t k, const Vector<F>& v) {
    for (std::size_t i = 0; i < 3; ++i) t.set_symmetric(i, j, k, v[i]);
  };
  put(0, 0, scaled(e, F(1) + four * (abc.b + abc.c)));
  put(1, 1, scaled(e, F(1) + four * (abc.a + abc.c)));
  put(2, 2, scaled(e, F(1) + four * (abc.a + abc.b)));
  put(0, 1, cross(2, abc.c));
  put(1, 2, cross(0, abc.a));
  put(0, 2, cross(1, abc.b));
  return Algebra<F>(std::move(t));
}

/// The basis e_1 = -x+y+z, e_2 = x-y+z, e_3 = x+y-z of the Halphen-II algebra.
template <ExactField F>
LinearMap<F> halphen2_e_basis() {
  return LinearMap<F>(Matrix<F>::from_rows({{F(-1), F(1), F(1)}, {F(1), F(-1), F(1)}, {F(1), F(1), F(-1)}}));
}

}  // namespace dhb
