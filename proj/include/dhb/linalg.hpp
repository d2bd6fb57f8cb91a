#pragma once

// Dense matrices and exact Gaussian elimination over the exact scalar fields.

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "dhb/errors.hpp"
#include "dhb/scalar.hpp"

namespace dhb {

template <class F>
using Vector = std::vector<F>;

template <class F>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, F(0)) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = F(1);
    return m;
  }

  static Matrix from_rows(const std::vector<std::vector<F>>& rows) {
    const std::size_t r = rows.size();
    const std::size_t c = r == 0 ? 0 : rows.front().size();
    Matrix m(r, c);
    for (std::size_t i = 0; i < r; ++i) {
      if (rows[i].size() != c) throw DimensionMismatch("ragged matrix rows");
      for (std::size_t j = 0; j < c; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  F& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const F& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  Vector<F> row(std::size_t i) const {
    return Vector<F>(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                     data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw DimensionMismatch("matrix product shape mismatch");
    Matrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const F& aik = a(i, k);
        for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
      }
    return c;
  }

  friend Vector<F> operator*(const Matrix& a, const Vector<F>& x) {
    if (a.cols_ != x.size()) throw DimensionMismatch("matrix-vector shape mismatch");
    Vector<F> y(a.rows_, F(0));
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t j = 0; j < a.cols_; ++j) y[i] += a(i, j) * x[j];
    return y;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  template <class G, class Fn>
  Matrix<G> map(Fn fn) const {
    Matrix<G> out(rows_, cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) out(i, j) = fn((*this)(i, j));
    return out;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<F> data_;
};

template <class F>
F dot(const Vector<F>& x, const Vector<F>& y) {
  if (x.size() != y.size()) throw DimensionMismatch("dot product length mismatch");
  F s(0);
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
  return s;
}

template <class F>
Vector<F> axpy(const F& a, const Vector<F>& x, Vector<F> y) {
  if (x.size() != y.size()) throw DimensionMismatch("axpy length mismatch");
  for (std::size_t i = 0; i < x.size(); ++i) y[i] += a * x[i];
  return y;
}

template <class F>
Vector<F> unit_vector(std::size_t n, std::size_t i) {
  Vector<F> v(n, F(0));
  v.at(i) = F(1);
  return v;
}

template <ExactField F>
bool is_zero(const Vector<F>& v) {
  for (const F& x : v)
    if (!is_zero(x)) return false;
  return true;
}

template <ExactField F>
struct RowEchelon {
  Matrix<F> reduced;                 // reduced row echelon form
  std::vector<std::size_t> pivots;   // pivot column of each nonzero row
  std::size_t rank() const { return pivots.size(); }
};

/// Reduced row echelon form by exact elimination (first nonzero pivot).
template <ExactField F>
RowEchelon<F> row_reduce(Matrix<F> m) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t col = 0; col < m.cols() && r < m.rows(); ++col) {
    std::size_t p = r;
    while (p < m.rows() && is_zero(m(p, col))) ++p;
    if (p == m.rows()) continue;
    if (p != r)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(r, j));
    const F inv = F(1) / m(r, col);
    for (std::size_t j = col; j < m.cols(); ++j) m(r, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || is_zero(m(i, col))) continue;
      const F factor = m(i, col);
      for (std::size_t j = col; j < m.cols(); ++j) m(i, j) -= factor * m(r, j);
    }
    pivots.push_back(col);
    ++r;
  }
  return {std::move(m), std::move(pivots)};
}

template <ExactField F>
std::size_t rank(const Matrix<F>& m) {
  return row_reduce(m).rank();
}

template <ExactField F>
struct LinearSolution {
  Vector<F> particular;  // free variables set to zero
  std::size_t nullity = 0;
};

/// Solves A x = b exactly.  nullopt when inconsistent.
template <ExactField F>
std::optional<LinearSolution<F>> solve(const Matrix<F>& a, const Vector<F>& b) {
  if (a.rows() != b.size()) throw DimensionMismatch("right-hand side length mismatch");
  Matrix<F> aug(a.rows(), a.cols() + 1);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) aug(i, j) = a(i, j);
    aug(i, a.cols()) = b[i];
  }
  RowEchelon<F> ech = row_reduce(std::move(aug));
  if (!ech.pivots.empty() && ech.pivots.back() == a.cols()) return std::nullopt;
  LinearSolution<F> sol{Vector<F>(a.cols(), F(0)), a.cols() - ech.rank()};
  for (std::size_t r = 0; r < ech.rank(); ++r) sol.particular[ech.pivots[r]] = ech.reduced(r, a.cols());
  return sol;
}

/// Basis of the right null space, one vector per free column.
template <ExactField F>
std::vector<Vector<F>> null_space(const Matrix<F>& a) {
  RowEchelon<F> ech = row_reduce(a);
  std::vector<bool> is_pivot(a.cols(), false);
  for (std::size_t p : ech.pivots) is_pivot[p] = true;
  std::vector<Vector<F>> basis;
  for (std::size_t free = 0; free < a.cols(); ++free) {
    if (is_pivot[free]) continue;
    Vector<F> v(a.cols(), F(0));
    v[free] = F(1);
    for (std::size_t r = 0; r < ech.rank(); ++r) v[ech.pivots[r]] = -ech.reduced(r, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

template <ExactField F>
std::optional<Matrix<F>> try_inverse(const Matrix<F>& m) {
  if (!m.square()) throw DimensionMismatch("inverse of a non-square matrix");
  const std::size_t n = m.rows();
  Matrix<F> aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = F(1);
  }
  RowEchelon<F> ech = row_reduce(std::move(aug));
  if (ech.rank() < n || ech.pivots[n - 1] != n - 1) return std::nullopt;
  Matrix<F> inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = ech.reduced(i, n + j);
  return inv;
}

template <ExactField F>
Matrix<F> inverse(const Matrix<F>& m) {
  auto inv = try_inverse(m);
  if (!inv) throw SingularMap("matrix is singular");
  return *std::move(inv);
}

template <ExactField F>
F determinant(Matrix<F> m) {
  if (!m.square()) throw DimensionMismatch("determinant of a non-square matrix");
  const std::size_t n = m.rows();
  F det(1);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t p = col;
    while (p < n && is_zero(m(p, col))) ++p;
    if (p == n) return F(0);
    if (p != col) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(p, j), m(col, j));
      det = -det;
    }
    det *= m(col, col);
    const F inv = F(1) / m(col, col);
    for (std::size_t i = col + 1; i < n; ++i) {
      if (is_zero(m(i, col))) continue;
      const F factor = m(i, col) * inv;
      for (std::size_t j = col; j < n; ++j) m(i, j) -= factor * m(col, j);
    }
  }
  return det;
}

template <class F>
Matrix<Complex> to_complex(const Matrix<F>& m) {
  return m.template map<Complex>([](const F& x) { return to_complex(x); });
}

template <class F>
Vector<Complex> to_complex(const Vector<F>& v) {
  Vector<Complex> out;
  out.reserve(v.size());
  for (const F& x : v) out.push_back(to_complex(x));
  return out;
}

}  // namespace dhb
