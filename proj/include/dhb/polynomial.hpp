#pragma once

// Univariate polynomials and reduced rational functions over the exact fields.

#include <algorithm>
#include <cstddef>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "dhb/errors.hpp"
#include "dhb/scalar.hpp"

namespace dhb {

/// Coefficients stored lowest degree first, with no trailing zeros.
template <ExactField F>
class Polynomial {
 public:
  Polynomial() = default;
  Polynomial(const F& c) : coeffs_{c} { trim(); }  // NOLINT(google-explicit-constructor)
  explicit Polynomial(std::vector<F> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

  static Polynomial monomial(const F& c, std::size_t degree) {
    std::vector<F> v(degree + 1, F(0));
    v[degree] = c;
    return Polynomial(std::move(v));
  }
  /// z - a
  static Polynomial linear_root(const F& a) { return Polynomial(std::vector<F>{-a, F(1)}); }

  bool is_zero() const { return coeffs_.empty(); }
  /// Degree of the zero polynomial is reported as -1.
  long degree() const { return static_cast<long>(coeffs_.size()) - 1; }
  const std::vector<F>& coeffs() const { return coeffs_; }
  F coeff(std::size_t k) const { return k < coeffs_.size() ? coeffs_[k] : F(0); }
  F leading() const { return coeffs_.empty() ? F(0) : coeffs_.back(); }

  template <class G>
  G operator()(const G& z) const {
    G acc(0);
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * z + G(convert<G>(*it));
    return acc;
  }

  Polynomial derivative() const {
    if (coeffs_.size() <= 1) return {};
    std::vector<F> d(coeffs_.size() - 1);
    for (std::size_t k = 1; k < coeffs_.size(); ++k) d[k - 1] = coeffs_[k] * F(static_cast<long>(k));
    return Polynomial(std::move(d));
  }

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    std::vector<F> c(std::max(a.coeffs_.size(), b.coeffs_.size()), F(0));
    for (std::size_t k = 0; k < a.coeffs_.size(); ++k) c[k] += a.coeffs_[k];
    for (std::size_t k = 0; k < b.coeffs_.size(); ++k) c[k] += b.coeffs_[k];
    return Polynomial(std::move(c));
  }
  friend Polynomial operator-(const Polynomial& a) {
    std::vector<F> c(a.coeffs_);
    for (F& x : c) x = -x;
    return Polynomial(std::move(c));
  }
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + (-b); }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<F> c(a.coeffs_.size() + b.coeffs_.size() - 1, F(0));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
    return Polynomial(std::move(c));
  }
  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.coeffs_ == b.coeffs_; }

  /// Quotient and remainder; throws DomainError on division by zero.
  static std::pair<Polynomial, Polynomial> divmod(const Polynomial& a, const Polynomial& b) {
    if (b.is_zero()) throw DomainError("polynomial division by zero");
    if (a.degree() < b.degree()) return {Polynomial(), a};
    std::vector<F> rem = a.coeffs_;
    std::vector<F> quot(static_cast<std::size_t>(a.degree() - b.degree()) + 1, F(0));
    const F lead_inv = F(1) / b.leading();
    const std::size_t db = static_cast<std::size_t>(b.degree());
    for (std::size_t k = quot.size(); k-- > 0;) {
      const F f = rem[k + db] * lead_inv;
      quot[k] = f;
      if (dhb::is_zero(f)) continue;
      for (std::size_t j = 0; j <= db; ++j) rem[k + j] -= f * b.coeffs_[j];
    }
    return {Polynomial(std::move(quot)), Polynomial(std::move(rem))};
  }

  Polynomial monic() const {
    if (is_zero()) return {};
    const F inv = F(1) / leading();
    std::vector<F> c(coeffs_);
    for (F& x : c) x *= inv;
    return Polynomial(std::move(c));
  }

  Polynomial scaled(const F& s) const {
    std::vector<F> c(coeffs_);
    for (F& x : c) x *= s;
    return Polynomial(std::move(c));
  }

 private:
  template <class G>
  static G convert(const F& x) {
    if constexpr (std::is_same_v<G, F>) {
      return x;
    } else {
      return FieldTraits<F>::to_complex(x);
    }
  }

  void trim() {
    while (!coeffs_.empty() && dhb::is_zero(coeffs_.back())) coeffs_.pop_back();
  }

  std::vector<F> coeffs_;
};

template <ExactField F>
Polynomial<F> gcd(Polynomial<F> a, Polynomial<F> b) {
  while (!b.is_zero()) {
    auto r = Polynomial<F>::divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

template <ExactField F>
std::string to_string(const Polynomial<F>& p, const std::string& var = "z") {
  if (p.is_zero()) return "0";
  std::string out;
  for (std::size_t k = p.coeffs().size(); k-- > 0;) {
    const F& c = p.coeffs()[k];
    if (is_zero(c)) continue;
    if (!out.empty()) out += " + ";
    std::string cs = FieldTraits<F>::format(c);
    if (k == 0) {
      out += cs;
      continue;
    }
    if (!(c == F(1))) out += "(" + cs + ")*";
    out += var;
    if (k > 1) out += "^" + std::to_string(k);
  }
  return out;
}

/// num / den in lowest terms with a monic denominator.
template <ExactField F>
class RationalFunction {
 public:
  RationalFunction() : num_(), den_(F(1)) {}
  RationalFunction(const F& c) : num_(c), den_(F(1)) {}  // NOLINT(google-explicit-constructor)
  RationalFunction(Polynomial<F> num) : num_(std::move(num)), den_(F(1)) {}  // NOLINT
  RationalFunction(Polynomial<F> num, Polynomial<F> den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw DomainError("rational function with zero denominator");
    reduce();
  }

  const Polynomial<F>& num() const { return num_; }
  const Polynomial<F>& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }

  template <class G>
  G operator()(const G& z) const {
    const G d = den_(z);
    if constexpr (ExactField<G>) {
      if (dhb::is_zero(d)) throw DomainError("rational function evaluated at a pole");
    }
    return num_(z) / d;
  }

  RationalFunction derivative() const {
    return {num_.derivative() * den_ - num_ * den_.derivative(), den_ * den_};
  }

  friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
    return {a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_};
  }
  friend RationalFunction operator-(const RationalFunction& a) { return {-a.num_, a.den_}; }
  friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) { return a + (-b); }
  friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
    return {a.num_ * b.num_, a.den_ * b.den_};
  }
  friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) {
    if (b.is_zero()) throw DomainError("rational function division by zero");
    return {a.num_ * b.den_, a.den_ * b.num_};
  }
  friend bool operator==(const RationalFunction& a, const RationalFunction& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

 private:
  void reduce() {
    if (num_.is_zero()) {
      den_ = Polynomial<F>(F(1));
      return;
    }
    const Polynomial<F> g = gcd(num_, den_);
    num_ = Polynomial<F>::divmod(num_, g).first;
    den_ = Polynomial<F>::divmod(den_, g).first;
    const F lead_inv = F(1) / den_.leading();
    num_ = num_.scaled(lead_inv);
    den_ = den_.scaled(lead_inv);
  }

  Polynomial<F> num_;
  Polynomial<F> den_;
};

template <ExactField F>
std::string to_string(const RationalFunction<F>& r, const std::string& var = "z") {
  if (r.den().degree() == 0) return to_string(r.num(), var);
  return "(" + to_string(r.num(), var) + ") / (" + to_string(r.den(), var) + ")";
}

}  // namespace dhb
