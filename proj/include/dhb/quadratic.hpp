#pragma once

// Homogeneous quadratic systems dX_i/dt = sum a^i_jk X_j X_k and the commutative
// algebras x_j . x_k = sum a^i_jk x_i that share their coefficient tensor.

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "dhb/errors.hpp"
#include "dhb/linalg.hpp"
#include "dhb/scalar.hpp"

namespace dhb {

/// Dense n x n x n tensor t(i, j, k), upper index first.
template <class F>
class Tensor3 {
 public:
  Tensor3() = default;
  explicit Tensor3(std::size_t n) : n_(n), data_(n * n * n, F(0)) {}

  std::size_t dim() const { return n_; }
  F& operator()(std::size_t i, std::size_t j, std::size_t k) { return data_[(i * n_ + j) * n_ + k]; }
  const F& operator()(std::size_t i, std::size_t j, std::size_t k) const {
    return data_[(i * n_ + j) * n_ + k];
  }

  /// Sets t(i, j, k) and t(i, k, j) together.
  void set_symmetric(std::size_t i, std::size_t j, std::size_t k, const F& v) {
    (*this)(i, j, k) = v;
    (*this)(i, k, j) = v;
  }

  bool symmetric_in_lower() const {
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j)
        for (std::size_t k = j + 1; k < n_; ++k)
          if (!scalar_equal((*this)(i, j, k), (*this)(i, k, j))) return false;
    return true;
  }

  friend bool operator==(const Tensor3& a, const Tensor3& b) { return a.n_ == b.n_ && a.data_ == b.data_; }

  template <class G, class Fn>
  Tensor3<G> map(Fn fn) const {
    Tensor3<G> out(n_);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j)
        for (std::size_t k = 0; k < n_; ++k) out(i, j, k) = fn((*this)(i, j, k));
    return out;
  }

 private:
  std::size_t n_ = 0;
  std::vector<F> data_;
};

template <class F>
bool is_symmetric(const Matrix<F>& m) {
  if (!m.square()) return false;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = i + 1; j < m.cols(); ++j)
      if (!scalar_equal(m(i, j), m(j, i))) return false;
  return true;
}

/// Q(X) = sum b_jk X_j X_k with b symmetric.
template <class F>
class QuadricForm {
 public:
  QuadricForm() = default;
  explicit QuadricForm(std::size_t n) : b_(n, n) {}
  explicit QuadricForm(Matrix<F> b) : b_(std::move(b)) {
    if (!is_symmetric(b_)) throw InvalidInput("quadric matrix is not symmetric");
  }

  std::size_t dim() const { return b_.rows(); }
  const Matrix<F>& matrix() const { return b_; }
  const F& operator()(std::size_t j, std::size_t k) const { return b_(j, k); }

  /// Adds coef * u(X) * v(X) for linear forms u, v given by coefficient vectors.
  void add_product(const Vector<F>& u, const Vector<F>& v, const F& coef) {
    if (u.size() != dim() || v.size() != dim()) throw DimensionMismatch("linear form length");
    const F half = coef / F(2);
    for (std::size_t j = 0; j < dim(); ++j)
      for (std::size_t k = 0; k < dim(); ++k) b_(j, k) += half * (u[j] * v[k] + v[j] * u[k]);
  }

  /// Adds coef * X_j X_k (as a polynomial monomial).
  void add_monomial(std::size_t j, std::size_t k, const F& coef) {
    add_product(unit_vector<F>(dim(), j), unit_vector<F>(dim(), k), coef);
  }

  /// The symmetric bilinear form B(u, v) = u^T b v; Q(X) = B(X, X).
  F bilinear(const Vector<F>& u, const Vector<F>& v) const { return dot(u, b_ * v); }
  F operator()(const Vector<F>& x) const { return bilinear(x, x); }

  friend bool operator==(const QuadricForm& a, const QuadricForm& b) { return a.b_ == b.b_; }

 private:
  Matrix<F> b_;
};

template <class F>
struct LinearForm {
  Vector<F> coeffs;
  F operator()(const Vector<F>& x) const { return dot(coeffs, x); }
  friend bool operator==(const LinearForm&, const LinearForm&) = default;
};

/// Square matrix with a cached invertibility flag.  As a basis change its rows
/// are the new basis elements written in the old basis.
template <ExactField F>
class LinearMap {
 public:
  explicit LinearMap(Matrix<F> m) : m_(std::move(m)) {
    if (!m_.square()) throw DimensionMismatch("linear map must be square");
    invertible_ = !is_zero(determinant(m_));
  }
  static LinearMap identity(std::size_t n) { return LinearMap(Matrix<F>::identity(n)); }

  const Matrix<F>& matrix() const { return m_; }
  std::size_t dim() const { return m_.rows(); }
  bool invertible() const { return invertible_; }
  Matrix<F> inverse_matrix() const {
    if (!invertible_) throw SingularMap("linear map is singular");
    return inverse(m_);
  }

  friend bool operator==(const LinearMap& a, const LinearMap& b) { return a.m_ == b.m_; }

 private:
  Matrix<F> m_;
  bool invertible_ = false;
};

template <class F>
class QuadraticSystem {
 public:
  QuadraticSystem() = default;
  explicit QuadraticSystem(Tensor3<F> a) : a_(std::move(a)) {
    if (!a_.symmetric_in_lower()) throw InvalidInput("coefficient tensor violates a^i_jk = a^i_kj");
  }

  /// Builds the system whose i-th right-hand side is the quadratic form forms[i].
  static QuadraticSystem from_forms(const std::vector<QuadricForm<F>>& forms) {
    const std::size_t n = forms.size();
    Tensor3<F> a(n);
    for (std::size_t i = 0; i < n; ++i) {
      if (forms[i].dim() != n) throw DimensionMismatch("right-hand side form has wrong dimension");
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k) a(i, j, k) = forms[i](j, k);
    }
    return QuadraticSystem(std::move(a));
  }

  std::size_t dim() const { return a_.dim(); }
  const Tensor3<F>& tensor() const { return a_; }

  /// Right-hand side of component i as a quadric form.
  QuadricForm<F> component(std::size_t i) const {
    Matrix<F> m(dim(), dim());
    for (std::size_t j = 0; j < dim(); ++j)
      for (std::size_t k = 0; k < dim(); ++k) m(j, k) = a_(i, j, k);
    return QuadricForm<F>(std::move(m));
  }

  friend bool operator==(const QuadraticSystem& x, const QuadraticSystem& y) { return x.a_ == y.a_; }

 private:
  Tensor3<F> a_;
};

template <class F>
class Algebra {
 public:
  Algebra() = default;
  explicit Algebra(Tensor3<F> c) : c_(std::move(c)) {
    if (!c_.symmetric_in_lower()) throw InvalidInput("structure constants are not commutative");
  }

  std::size_t dim() const { return c_.dim(); }
  const Tensor3<F>& structure() const { return c_; }

  friend bool operator==(const Algebra& x, const Algebra& y) { return x.c_ == y.c_; }

 private:
  Tensor3<F> c_;
};

// ---------------------------------------------------------------------------
// Correspondence and basis changes

template <class F>
Algebra<F> system_to_algebra(const QuadraticSystem<F>& sys) {
  return Algebra<F>(sys.tensor());
}

template <class F>
QuadraticSystem<F> algebra_to_system(const Algebra<F>& alg) {
  return QuadraticSystem<F>(alg.structure());
}

template <class F>
Vector<F> multiply(const Algebra<F>& alg, const Vector<F>& u, const Vector<F>& v) {
  const std::size_t n = alg.dim();
  if (u.size() != n || v.size() != n) throw DimensionMismatch("element length does not match algebra");
  const Tensor3<F>& c = alg.structure();
  Vector<F> w(n, F(0));
  for (std::size_t j = 0; j < n; ++j) {
    if constexpr (ExactField<F>) {
      if (is_zero(u[j])) continue;
    }
    for (std::size_t k = 0; k < n; ++k) {
      const F ujvk = u[j] * v[k];
      for (std::size_t i = 0; i < n; ++i) w[i] += c(i, j, k) * ujvk;
    }
  }
  return w;
}

/// New basis y_j = sum_k P_jk x_k (rows of `basis`).  Structure constants become
/// c'^i_jk = sum P_jq P_kr c^p_qr (P^-1)_pi.
template <ExactField F>
Algebra<F> change_basis(const Algebra<F>& alg, const LinearMap<F>& basis) {
  const std::size_t n = alg.dim();
  if (basis.dim() != n) throw DimensionMismatch("basis size does not match algebra");
  const Matrix<F>& p = basis.matrix();
  const Matrix<F> pinv = basis.inverse_matrix();
  const Tensor3<F>& c = alg.structure();
  Tensor3<F> t1(n), t2(n), out(n);
  for (std::size_t q = 0; q < n; ++q)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t r = 0; r < n; ++r)
        for (std::size_t s = 0; s < n; ++s) t1(q, j, r) += p(j, s) * c(q, s, r);
  for (std::size_t q = 0; q < n; ++q)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t r = 0; r < n; ++r) t2(q, j, k) += p(k, r) * t1(q, j, r);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t q = 0; q < n; ++q) out(i, j, k) += t2(q, j, k) * pinv(q, i);
  return Algebra<F>(std::move(out));
}

/// New variables Y = M X:  b^i_jk = sum M_ip a^p_qr (M^-1)_qj (M^-1)_rk.
template <ExactField F>
QuadraticSystem<F> change_vars(const QuadraticSystem<F>& sys, const LinearMap<F>& m) {
  const std::size_t n = sys.dim();
  if (m.dim() != n) throw DimensionMismatch("variable change size does not match system");
  const Matrix<F>& mm = m.matrix();
  const Matrix<F> minv = m.inverse_matrix();
  const Tensor3<F>& a = sys.tensor();
  Tensor3<F> t1(n), t2(n), out(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t q = 0; q < n; ++q)
      for (std::size_t r = 0; r < n; ++r)
        for (std::size_t p = 0; p < n; ++p) t1(i, q, r) += mm(i, p) * a(p, q, r);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t r = 0; r < n; ++r)
        for (std::size_t q = 0; q < n; ++q) t2(i, j, r) += t1(i, q, r) * minv(q, j);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t r = 0; r < n; ++r) out(i, j, k) += t2(i, j, r) * minv(r, k);
  return QuadraticSystem<F>(std::move(out));
}

/// The pairing between variables and basis elements: Y = M X corresponds to
/// the basis change with matrix (M^-1)^T.
template <ExactField F>
LinearMap<F> contragredient(const LinearMap<F>& m) {
  return LinearMap<F>(m.inverse_matrix().transpose());
}

/// Quadric in the coordinates dual to the basis rows of P: b' = P b P^T.
template <ExactField F>
QuadricForm<F> transform_quadric(const QuadricForm<F>& q, const LinearMap<F>& basis) {
  if (basis.dim() != q.dim()) throw DimensionMismatch("basis size does not match quadric");
  const Matrix<F>& p = basis.matrix();
  return QuadricForm<F>(p * q.matrix() * p.transpose());
}

/// Adds a dummy variable X_n == 1:  F_i(X) + sum_j L_ij X_j X_n + C_i X_n^2, dX_n/dt = 0.
template <class F>
QuadraticSystem<F> homogenize(const Tensor3<F>& quadratic, const Matrix<F>& linear, const Vector<F>& constant) {
  const std::size_t n = quadratic.dim();
  if (linear.rows() != n || linear.cols() != n || constant.size() != n)
    throw DimensionMismatch("inhomogeneous parts have inconsistent dimensions");
  if (!quadratic.symmetric_in_lower()) throw InvalidInput("quadratic part is not symmetric");
  Tensor3<F> a(n + 1);
  const F half = F(1) / F(2);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) a(i, j, k) = quadratic(i, j, k);
      a.set_symmetric(i, j, n, linear(i, j) * half);
    }
    a(i, n, n) = constant[i];
  }
  return QuadraticSystem<F>(std::move(a));
}

template <class F>
Vector<F> evaluate_field(const QuadraticSystem<F>& sys, const Vector<F>& x) {
  const std::size_t n = sys.dim();
  if (x.size() != n) throw DimensionMismatch("state length does not match system");
  const Tensor3<F>& a = sys.tensor();
  Vector<F> out(n, F(0));
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = 0; k < n; ++k) {
      const F xjxk = x[j] * x[k];
      for (std::size_t i = 0; i < n; ++i) out[i] += a(i, j, k) * xjxk;
    }
  return out;
}

// ---------------------------------------------------------------------------
// Unit, derivations, rank-3 classification

/// Solves u . x_j = x_j for every basis element; units are unique when they exist.
template <ExactField F>
std::optional<Vector<F>> find_unit(const Algebra<F>& alg) {
  const std::size_t n = alg.dim();
  const Tensor3<F>& c = alg.structure();
  Matrix<F> eqs(n * n, n);
  Vector<F> rhs(n * n, F(0));
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t k = 0; k < n; ++k) eqs(j * n + i, k) = c(i, k, j);
      if (i == j) rhs[j * n + i] = F(1);
    }
  auto sol = solve(eqs, rhs);
  if (!sol) return std::nullopt;
  if (sol->nullity != 0) throw std::logic_error("unit equations admit a family of solutions");
  return sol->particular;
}

/// Dimension of {D : D(xy) = D(x) y + x D(y)}; zero iff the automorphism group is finite.
template <ExactField F>
std::size_t derivation_dimension(const Algebra<F>& alg) {
  const std::size_t n = alg.dim();
  const Tensor3<F>& c = alg.structure();
  // Unknown D_lj (coefficient of x_l in D(x_j)) sits in column l * n + j.
  const auto col = [n](std::size_t l, std::size_t j) { return l * n + j; };
  Matrix<F> eqs(n * n * (n + 1) / 2, n * n);
  std::size_t row = 0;
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = j; k < n; ++k)
      for (std::size_t i = 0; i < n; ++i, ++row)
        for (std::size_t p = 0; p < n; ++p) {
          eqs(row, col(i, p)) += c(p, j, k);
          eqs(row, col(p, j)) -= c(i, p, k);
          eqs(row, col(p, k)) -= c(i, j, p);
        }
  return n * n - rank(eqs);
}

enum class Rank3Class { NoUnit, HypergeometricType, ElementaryType };

std::string to_string(Rank3Class c);

template <ExactField F>
Rank3Class classify_rank3(const Algebra<F>& alg) {
  if (alg.dim() != 3) throw InvalidInput("rank-3 classification needs a 3-dimensional algebra");
  if (!find_unit(alg)) return Rank3Class::NoUnit;
  return derivation_dimension(alg) == 0 ? Rank3Class::HypergeometricType : Rank3Class::ElementaryType;
}

// ---------------------------------------------------------------------------
// Matrix Riccati dX/dt = X A X on 2 x 2 symmetric X = [[X11, X12], [X12, X22]]

template <class F>
QuadraticSystem<F> riccati_system(const Matrix<F>& a) {
  if (a.rows() != 2 || a.cols() != 2) throw DimensionMismatch("Riccati coefficient must be 2 x 2");
  if (!is_symmetric(a)) throw InvalidInput("Riccati coefficient must be symmetric");
  // Coordinate of entry (r, c) among (X11, X12, X22).
  const auto var = [](std::size_t r, std::size_t c) -> std::size_t { return r + c; };
  const std::array<std::array<std::size_t, 2>, 3> outputs{{{0, 0}, {0, 1}, {1, 1}}};
  std::vector<QuadricForm<F>> forms(3, QuadricForm<F>(3));
  for (std::size_t o = 0; o < 3; ++o) {
    const auto [i, j] = outputs[o];
    for (std::size_t k = 0; k < 2; ++k)
      for (std::size_t l = 0; l < 2; ++l) forms[o].add_monomial(var(i, k), var(l, j), a(k, l));
  }
  return QuadraticSystem<F>::from_forms(forms);
}

// ---------------------------------------------------------------------------
// Invariant quadrics

namespace detail {

/// Index of the cubic monomial X_i X_j X_k among sorted triples.
class CubicMonomials {
 public:
  explicit CubicMonomials(std::size_t n) : n_(n), index_(n * n * n) {
    std::size_t next = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j)
        for (std::size_t k = j; k < n; ++k) {
          for (const auto& [a, b, c] : std::array<std::array<std::size_t, 3>, 6>{
                   {{i, j, k}, {i, k, j}, {j, i, k}, {j, k, i}, {k, i, j}, {k, j, i}}})
            index_[(a * n + b) * n + c] = next;
          ++next;
        }
    count_ = next;
  }
  std::size_t count() const { return count_; }
  std::size_t operator()(std::size_t i, std::size_t j, std::size_t k) const { return index_[(i * n_ + j) * n_ + k]; }

 private:
  std::size_t n_;
  std::size_t count_ = 0;
  std::vector<std::size_t> index_;
};

}  // namespace detail

/// Finds L with sum_i dQ/dX_i F_i = L Q as a polynomial identity.  L = 0 exactly
/// when Q is a first integral; nullopt when the quadric is not invariant.
template <ExactField F>
std::optional<LinearForm<F>> find_cofactor(const QuadraticSystem<F>& sys, const QuadricForm<F>& q) {
  const std::size_t n = sys.dim();
  if (q.dim() != n) throw DimensionMismatch("quadric dimension does not match system");
  const detail::CubicMonomials mono(n);
  const Tensor3<F>& a = sys.tensor();

  Vector<F> derivative(mono.count(), F(0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (is_zero(q(i, j))) continue;
      const F grad = F(2) * q(i, j);
      for (std::size_t p = 0; p < n; ++p)
        for (std::size_t r = 0; r < n; ++r) derivative[mono(j, p, r)] += grad * a(i, p, r);
    }

  Matrix<F> lq(mono.count(), n);
  for (std::size_t s = 0; s < n; ++s)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) lq(mono(s, j, k), s) += q(j, k);

  auto sol = solve(lq, derivative);
  if (!sol) return std::nullopt;
  LinearForm<F> cofactor{sol->particular};
  // Exact residual: the identity must hold coefficientwise.
  Vector<F> residual = lq * cofactor.coeffs;
  for (std::size_t m = 0; m < mono.count(); ++m)
    if (!(residual[m] == derivative[m])) throw std::logic_error("cofactor residual is not zero");
  return cofactor;
}

}  // namespace dhb
