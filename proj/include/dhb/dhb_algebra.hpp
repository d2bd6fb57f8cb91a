#pragma once

// The parametric algebra A3(c):  x_j . x_k = sum_i a^i_jk x_i + b_jk x_c,  x_c = sum c_i x_i,
// attached to a rank-4 quadratic system with an invariant quadric, and the
// conditions deciding whether the system is a generalized Darboux-Halphen-Brioschi system.

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <type_traits>
#include <string>
#include <utility>
#include <vector>

#include "dhb/errors.hpp"
#include "dhb/fuchsian.hpp"
#include "dhb/line_search.hpp"
#include "dhb/linalg.hpp"
#include "dhb/quadratic.hpp"
#include "dhb/scalar.hpp"

namespace dhb {

template <ExactField F>
class ParametricAlgebra {
 public:
  ParametricAlgebra(Tensor3<F> base, QuadricForm<F> quadric) : base_(std::move(base)), quadric_(std::move(quadric)) {
    if (base_.dim() != 4 || quadric_.dim() != 4) throw DimensionMismatch("parametric algebra must be 4-dimensional");
    if (!base_.symmetric_in_lower()) throw InvalidInput("base tensor is not symmetric");
  }
  ParametricAlgebra(const QuadraticSystem<F>& sys, QuadricForm<F> quadric)
      : ParametricAlgebra(sys.tensor(), std::move(quadric)) {}

  const Tensor3<F>& base() const { return base_; }
  const QuadricForm<F>& quadric() const { return quadric_; }

  friend bool operator==(const ParametricAlgebra& x, const ParametricAlgebra& y) {
    return x.base_ == y.base_ && x.quadric_ == y.quadric_;
  }

 private:
  Tensor3<F> base_;
  QuadricForm<F> quadric_;
};

/// u . v = w + q x_c: w is c-independent and q = B(u, v).
template <ExactField F>
struct AffineProduct {
  Vector<F> w;
  F q;

  Vector<F> at(const Vector<F>& c) const { return axpy(q, c, w); }
};

template <ExactField F>
Algebra<F> specialize(const ParametricAlgebra<F>& pa, const Vector<F>& c) {
  if (c.size() != 4) throw DimensionMismatch("parameter c must have 4 entries");
  Tensor3<F> t = pa.base();
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j)
      for (std::size_t k = 0; k < 4; ++k) t(i, j, k) += pa.quadric()(j, k) * c[i];
  return Algebra<F>(std::move(t));
}

template <ExactField F>
AffineProduct<F> product_affine(const ParametricAlgebra<F>& pa, const Vector<F>& u, const Vector<F>& v) {
  if (u.size() != 4 || v.size() != 4) throw DimensionMismatch("elements must have 4 coordinates");
  return {multiply(Algebra<F>(pa.base()), u, v), pa.quadric().bilinear(u, v)};
}

/// The same family written in the basis whose rows are given by `basis`.
template <ExactField F>
ParametricAlgebra<F> change_basis(const ParametricAlgebra<F>& pa, const LinearMap<F>& basis) {
  return {change_basis(Algebra<F>(pa.base()), basis).structure(), transform_quadric(pa.quadric(), basis)};
}

/// e is the unit of every specialization: base(e x_j) = x_j and B(e, x_j) = 0.
template <ExactField F>
bool check_unit_for_all_c(const ParametricAlgebra<F>& pa, const Vector<F>& e) {
  for (std::size_t j = 0; j < 4; ++j) {
    const Vector<F> xj = unit_vector<F>(4, j);
    const AffineProduct<F> p = product_affine(pa, e, xj);
    if (!is_zero(p.q) || !(p.w == xj)) return false;
  }
  return true;
}

/// lambda with v.v = lambda e in every specialization, if any.
template <ExactField F>
std::optional<F> check_square_all_c(const ParametricAlgebra<F>& pa, const Vector<F>& v, const Vector<F>& e) {
  const AffineProduct<F> p = product_affine(pa, v, v);
  if (!is_zero(p.q)) return std::nullopt;
  std::size_t pivot = 0;
  while (pivot < e.size() && is_zero(e[pivot])) ++pivot;
  if (pivot == e.size()) return is_zero(p.w) ? std::optional<F>(F(0)) : std::nullopt;
  const F lambda = p.w[pivot] / e[pivot];
  for (std::size_t i = 0; i < e.size(); ++i)
    if (!(p.w[i] == lambda * e[i])) return std::nullopt;
  return lambda;
}

template <ExactField F>
struct SomeC {
  Vector<F> c;
  std::vector<F> lambdas;  // one per pattern
  std::size_t freedom = 0; // dimension of the solution family
};

/// One c for which every v in `patterns` squares to a multiple of e.  The
/// returned solution sets the free unknowns (trailing c entries first) to zero.
template <ExactField F>
std::optional<SomeC<F>> solve_some_c(const ParametricAlgebra<F>& pa, const std::vector<Vector<F>>& patterns,
                                     const Vector<F>& e) {
  const std::size_t p = patterns.size();
  if (p == 0) return SomeC<F>{Vector<F>(4, F(0)), {}, 4};
  // Unknowns: lambda_1..lambda_p, c_0..c_3.
  Matrix<F> a(4 * p, p + 4);
  Vector<F> rhs(4 * p, F(0));
  for (std::size_t r = 0; r < p; ++r) {
    const AffineProduct<F> prod = product_affine(pa, patterns[r], patterns[r]);
    for (std::size_t i = 0; i < 4; ++i) {
      a(4 * r + i, r) = -e[i];
      a(4 * r + i, p + i) = prod.q;
      rhs[4 * r + i] = -prod.w[i];
    }
  }
  const auto sol = solve(a, rhs);
  if (!sol) return std::nullopt;
  SomeC<F> out;
  out.lambdas.assign(sol->particular.begin(), sol->particular.begin() + static_cast<std::ptrdiff_t>(p));
  out.c.assign(sol->particular.begin() + static_cast<std::ptrdiff_t>(p), sol->particular.end());
  out.freedom = sol->nullity;
  return out;
}

// ---------------------------------------------------------------------------
// The distinguished basis e_0 = x_0+x_1+x_2+x_3, e_j = e_0 - 2 x_j (j = 1,2,3)

template <ExactField F>
Matrix<F> e_basis_matrix() {
  return Matrix<F>::from_rows({{F(1), F(1), F(1), F(1)},
                               {F(1), F(-1), F(1), F(1)},
                               {F(1), F(1), F(-1), F(1)},
                               {F(1), F(1), F(1), F(-1)}});
}

/// (-x0+x1+x2+x3), (x0-x1+x2+x3), (x0+x1-x2+x3), (x0+x1+x2-x3).
template <ExactField F>
std::vector<Vector<F>> single_minus_patterns() {
  std::vector<Vector<F>> out;
  for (std::size_t j = 0; j < 4; ++j) {
    Vector<F> v(4, F(1));
    v[j] = F(-1);
    out.push_back(std::move(v));
  }
  return out;
}

/// (x0+x1-x2-x3), (x0-x1+x2-x3), (x0-x1-x2+x3).
template <ExactField F>
std::vector<Vector<F>> two_minus_patterns() {
  return {{F(1), F(1), F(-1), F(-1)}, {F(1), F(-1), F(1), F(-1)}, {F(1), F(-1), F(-1), F(1)}};
}

template <ExactField F>
struct QuadricReport {
  QuadricForm<F> in_basis;      // coordinates dual to the new basis
  QuadricForm<F> in_e;          // coordinates E_0..E_3 dual to the e-basis
  std::array<F, 4> e0_terms;    // coefficients of E_0^2, E_0E_1, E_0E_2, E_0E_3
  std::array<F, 3> squares;     // coefficients of E_1^2, E_2^2, E_3^2
  std::array<F, 3> gamma;       // coefficients of E_1E_2, E_2E_3, E_1E_3
  bool e0_free = false;
  bool squares_free = false;
  bool gamma_sum_zero = false;
  bool gamma_nonzero = false;

  bool gamma_form() const { return e0_free && squares_free && gamma_sum_zero && gamma_nonzero; }
};

template <ExactField F>
QuadricReport<F> quadric_in_basis(const QuadricForm<F>& q, const LinearMap<F>& basis) {
  if (q.dim() != 4) throw DimensionMismatch("quadric must be 4-dimensional");
  QuadricReport<F> r{transform_quadric(q, basis), QuadricForm<F>(4), {}, {}, {}};
  r.in_e = transform_quadric(r.in_basis, LinearMap<F>(e_basis_matrix<F>()));
  const auto& m = r.in_e;
  r.e0_terms = {m(0, 0), F(2) * m(0, 1), F(2) * m(0, 2), F(2) * m(0, 3)};
  r.squares = {m(1, 1), m(2, 2), m(3, 3)};
  r.gamma = {F(2) * m(1, 2), F(2) * m(2, 3), F(2) * m(1, 3)};
  r.e0_free = std::all_of(r.e0_terms.begin(), r.e0_terms.end(), [](const F& x) { return is_zero(x); });
  r.squares_free = std::all_of(r.squares.begin(), r.squares.end(), [](const F& x) { return is_zero(x); });
  r.gamma_sum_zero = is_zero(F(r.gamma[0] + r.gamma[1] + r.gamma[2]));
  r.gamma_nonzero = std::none_of(r.gamma.begin(), r.gamma.end(), [](const F& x) { return is_zero(x); });
  return r;
}

template <ExactField F>
struct NormalForm {
  std::array<F, 3> alpha_tilde;  // e_j^2 = alpha_tilde_j e_0
  std::array<F, 3> beta_tilde;   // e_1e_2, e_2e_3, e_1e_3 = e_i + e_j + beta_tilde e_0
  std::array<F, 3> gamma;        // Q = g1 E1E2 + g2 E2E3 + g3 E1E3
  std::array<F, 3> alpha;
  std::array<F, 2> beta;
  Vector<F> c;                   // c_1 = c_2 = c_3 = c_4

  friend bool operator==(const NormalForm&, const NormalForm&) = default;
};

/// Normal-form parameters from the e-basis data.  With Q = sum gamma E_iE_j the
/// cross products of the gDHB algebra at c = kappa (1,1,1,1) carry
/// beta_tilde_3 = -1 + kappa gamma_3 / 2, which fixes kappa and the beta's.
template <ExactField F>
NormalForm<F> normal_form_from_tilde(const std::array<F, 3>& alpha_tilde, const std::array<F, 3>& beta_tilde,
                                     const std::array<F, 3>& gamma) {
  for (const F& g : gamma)
    if (is_zero(g)) throw NotGdhb("quadric coefficient gamma vanishes; the quadric is reducible");
  if (!is_zero(F(gamma[0] + gamma[1] + gamma[2]))) throw NotGdhb("quadric coefficients gamma do not sum to zero");
  NormalForm<F> nf{alpha_tilde, beta_tilde, gamma, {}, {}, {}};
  const F quarter = F(1) / F(4), half = F(1) / F(2);
  for (std::size_t j = 0; j < 3; ++j) nf.alpha[j] = quarter * (F(1) - alpha_tilde[j]);
  const F b3 = F(1) + beta_tilde[2];
  nf.beta[0] = -half * (F(1) + beta_tilde[0]) + gamma[0] * b3 / (F(2) * gamma[2]);
  nf.beta[1] = -half * (F(1) + beta_tilde[1]) + gamma[1] * b3 / (F(2) * gamma[2]);
  nf.c = Vector<F>(4, F(2) * b3 / gamma[2]);
  return nf;
}

/// Reads the normal form of pa in the theorem basis `basis`, specializing at
/// c_witness (the condition-2 solution when omitted), and checks that the
/// specialization equals the rebuilt gDHB algebra at c = kappa (1,1,1,1).
template <ExactField F>
NormalForm<F> extract_normal_form(const ParametricAlgebra<F>& pa, const LinearMap<F>& basis,
                                  std::optional<Vector<std::type_identity_t<F>>> c_witness = std::nullopt) {
  const ParametricAlgebra<F> moved = change_basis(pa, basis);
  const Vector<F> e(4, F(1));
  if (!c_witness) {
    const auto some = solve_some_c(moved, two_minus_patterns<F>(), e);
    if (!some) throw NotGdhb("no common c makes the two-minus squares proportional to the unit");
    c_witness = some->c;
  }
  const Algebra<F> alg = specialize(moved, *c_witness);
  const Matrix<F> eb = e_basis_matrix<F>();
  const Algebra<F> in_e = change_basis(alg, LinearMap<F>(eb));
  const auto prod = [&](std::size_t i, std::size_t j) {
    return multiply(in_e, unit_vector<F>(4, i), unit_vector<F>(4, j));
  };

  std::array<F, 3> alpha_tilde{}, beta_tilde{};
  for (std::size_t j = 1; j <= 3; ++j) {
    const Vector<F> sq = prod(j, j);
    for (std::size_t i = 1; i < 4; ++i)
      if (!is_zero(sq[i])) throw NotGdhb("e_j^2 is not proportional to e_0");
    alpha_tilde[j - 1] = sq[0];
  }
  const std::array<std::pair<std::size_t, std::size_t>, 3> pairs{{{1, 2}, {2, 3}, {1, 3}}};
  for (std::size_t t = 0; t < 3; ++t) {
    const auto [i, j] = pairs[t];
    Vector<F> p = prod(i, j);
    p[i] -= F(1);
    p[j] -= F(1);
    for (std::size_t k = 1; k < 4; ++k)
      if (!is_zero(p[k])) throw NotGdhb("e_i e_j - e_i - e_j is not proportional to e_0");
    beta_tilde[t] = p[0];
  }
  const QuadricReport<F> qr = quadric_in_basis(pa.quadric(), basis);
  if (!qr.e0_free || !qr.squares_free) throw NotGdhb("quadric is not of the form g1 E1E2 + g2 E2E3 + g3 E1E3");
  NormalForm<F> nf = normal_form_from_tilde(alpha_tilde, beta_tilde, qr.gamma);

  // Rebuild: gDHB base tensor plus the quadric term at c = kappa (1,1,1,1).
  const QuadraticSystem<F> rebuilt = gdhb_tensor<F>({nf.alpha.begin(), nf.alpha.end()}, {nf.beta.begin(), nf.beta.end()});
  if (!(specialize(ParametricAlgebra<F>(rebuilt.tensor(), moved.quadric()), nf.c) == alg))
    throw NotGdhb("rebuilt gDHB algebra does not match the specialization");
  return nf;
}

template <ExactField F>
struct RecognitionReport {
  bool condition1 = false;
  std::array<bool, 4> condition3{};
  std::array<std::optional<F>, 4> condition3_lambda{};
  std::optional<SomeC<F>> condition2;
  std::optional<NormalForm<F>> normal_form;
  Matrix<F> basis_used = Matrix<F>::identity(4);
  bool searched = false;
  bool search_found = false;
  std::string failure;

  bool condition3_all() const { return std::all_of(condition3.begin(), condition3.end(), [](bool b) { return b; }); }
  bool passed() const { return normal_form.has_value(); }
};

struct SearchOptions {
  int restarts = 300;
  std::uint64_t seed = 1;
  std::int64_t max_denominator = 1000000;
  std::size_t max_candidates = 64;
};

/// Runs conditions 1, 3, 2 in the given basis, then extracts the normal form.
template <ExactField F>
RecognitionReport<F> recognize_in_basis(const ParametricAlgebra<F>& pa, const LinearMap<F>& basis) {
  RecognitionReport<F> r;
  r.basis_used = basis.matrix();
  if (!basis.invertible()) {
    r.failure = "basis is singular";
    return r;
  }
  const ParametricAlgebra<F> moved = change_basis(pa, basis);
  const Vector<F> e(4, F(1));
  r.condition1 = check_unit_for_all_c(moved, e);
  if (!r.condition1) {
    r.failure = "condition 1: x0+x1+x2+x3 is not a unit for every c";
    return r;
  }
  const auto singles = single_minus_patterns<F>();
  for (std::size_t j = 0; j < 4; ++j) {
    r.condition3_lambda[j] = check_square_all_c(moved, singles[j], e);
    r.condition3[j] = r.condition3_lambda[j].has_value();
  }
  if (!r.condition3_all()) {
    r.failure = "condition 3: a single-minus square is not proportional to the unit for every c";
    return r;
  }
  r.condition2 = solve_some_c(moved, two_minus_patterns<F>(), e);
  if (!r.condition2) {
    r.failure = "condition 2: no common c makes the two-minus squares proportional to the unit";
    return r;
  }
  try {
    r.normal_form = extract_normal_form(pa, basis, r.condition2->c);
  } catch (const NotGdhb& err) {
    r.failure = std::string("normal form: ") + err.what();
  }
  return r;
}

/// The element that is a unit of A3(c) for every c, if there is one.
template <ExactField F>
std::optional<Vector<F>> unit_for_all_c(const ParametricAlgebra<F>& pa) {
  const Tensor3<F>& a = pa.base();
  // Unknown u: sum_k u_k a^i_kj = delta_ij and sum_k u_k b_kj = 0.
  Matrix<F> eqs(20, 4);
  Vector<F> rhs(20, F(0));
  for (std::size_t j = 0; j < 4; ++j) {
    for (std::size_t i = 0; i < 4; ++i) {
      for (std::size_t k = 0; k < 4; ++k) eqs(4 * j + i, k) = a(i, k, j);
      if (i == j) rhs[4 * j + i] = F(1);
    }
    for (std::size_t k = 0; k < 4; ++k) eqs(16 + j, k) = pa.quadric()(k, j);
  }
  const auto sol = solve(eqs, rhs);
  if (!sol || sol->nullity != 0) return std::nullopt;
  return sol->particular;
}

/// Best-effort numerical search for a theorem basis.  Every returned basis has
/// passed the exact recognizer; nullopt proves nothing.
template <ExactField F>
std::optional<LinearMap<F>> search_basis(const ParametricAlgebra<F>& pa, const SearchOptions& opts = {}) {
  const auto unit = unit_for_all_c(pa);
  if (!unit) return std::nullopt;
  const Tensor3<Complex> base = pa.base().template map<Complex>([](const F& x) { return to_complex(x); });
  const Matrix<Complex> quad = to_complex(pa.quadric().matrix());
  const Vector<Complex> e = to_complex(*unit);

  double scale = 1.0;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) scale = std::max(scale, std::abs(quad(i, j)));

  LineSearchOptions lo;
  lo.restarts = opts.restarts;
  lo.seed = opts.seed;
  const auto lines = find_square_lines(base, quad, e, lo);
  for (const Matrix<Complex>& cand : candidate_bases(lines, e, 1e-8 * scale, opts.max_candidates)) {
    Matrix<F> exact(4, 4);
    bool ok = true;
    for (std::size_t i = 0; i < 4 && ok; ++i)
      for (std::size_t j = 0; j < 4 && ok; ++j) {
        const auto s = FieldTraits<F>::snap(cand(i, j), opts.max_denominator, 1e-8);
        if (!s) ok = false;
        else exact(i, j) = *s;
      }
    if (!ok) continue;
    const LinearMap<F> basis(exact);
    if (!basis.invertible()) continue;
    if (recognize_in_basis(pa, basis).passed()) return basis;
  }
  return std::nullopt;
}

template <ExactField F>
RecognitionReport<F> recognize(const ParametricAlgebra<F>& pa, const std::optional<LinearMap<std::type_identity_t<F>>>& basis,
                               const SearchOptions& opts = {}) {
  if (basis) return recognize_in_basis(pa, *basis);
  RecognitionReport<F> r;
  r.searched = true;
  const auto found = search_basis(pa, opts);
  if (!found) {
    r = recognize_in_basis(pa, LinearMap<F>::identity(4));
    r.searched = true;
    if (!r.passed()) r.failure = "basis search found no candidate; identity basis: " + r.failure;
    return r;
  }
  r = recognize_in_basis(pa, *found);
  r.searched = true;
  r.search_found = true;
  return r;
}

/// A3(c) of an m = 3 gDHB system with its cross-ratio quadric.
template <ExactField F>
ParametricAlgebra<F> build_A3_from_gdhb(const GDHBSystem<F>& g) {
  if (g.m != 3 || g.constraints.size() != 1) throw InvalidInput("A3 needs an m = 3 system with one quadric");
  return ParametricAlgebra<F>(g.system, g.constraints.front());
}

/// The representation of pa in which the theorem basis of pa has coordinate rows `m`:
/// recognize(scramble(pa, m), m) sees pa again.
template <ExactField F>
ParametricAlgebra<F> scramble(const ParametricAlgebra<F>& pa, const LinearMap<F>& m) {
  return change_basis(pa, LinearMap<F>(m.inverse_matrix()));
}

}  // namespace dhb
