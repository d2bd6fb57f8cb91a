#pragma once

// Scalar domains: exact rationals, Eisenstein rationals a + b*w (w a primitive
// cube root of unity) and complex doubles.  Decision procedures are restricted
// to the exact domains through the ExactField concept.

#include <gmpxx.h>

#include <algorithm>
#include <complex>
#include <concepts>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>

namespace dhb {

using Rational = mpq_class;
using Complex = std::complex<double>;

/// p/q in canonical form (mpq_class(p, q) alone is not canonicalized).
inline Rational frac(long p, long q) {
  Rational r(p, q);
  r.canonicalize();
  return r;
}

/// Parses "p", "-p/q" exactly.  Throws InvalidInput on anything else.
Rational parse_rational(std::string_view text);
std::string to_string(const Rational& x);

/// Best rational approximation with denominator <= max_den (continued fractions).
Rational rationalize(double x, std::int64_t max_den);

class Eisenstein {
 public:
  Eisenstein() = default;
  Eisenstein(long v) : a_(v) {}  // NOLINT(google-explicit-constructor)
  Eisenstein(const Rational& a) : a_(a) {}  // NOLINT(google-explicit-constructor)
  Eisenstein(Rational a, Rational b) : a_(std::move(a)), b_(std::move(b)) {}

  static Eisenstein omega() { return {Rational(0), Rational(1)}; }

  const Rational& a() const { return a_; }
  const Rational& b() const { return b_; }

  bool is_zero() const { return sgn(a_) == 0 && sgn(b_) == 0; }

  /// Complex conjugate: w maps to w^2 = -1 - w.
  Eisenstein conj() const { return {Rational(a_ - b_), Rational(-b_)}; }
  /// Field norm a^2 - ab + b^2 (nonzero unless the element is zero).
  Rational norm() const { return a_ * a_ - a_ * b_ + b_ * b_; }

  Eisenstein& operator+=(const Eisenstein& o) {
    a_ += o.a_;
    b_ += o.b_;
    return *this;
  }
  Eisenstein& operator-=(const Eisenstein& o) {
    a_ -= o.a_;
    b_ -= o.b_;
    return *this;
  }
  Eisenstein& operator*=(const Eisenstein& o);
  Eisenstein& operator/=(const Eisenstein& o);

  friend Eisenstein operator+(Eisenstein x, const Eisenstein& y) { return x += y; }
  friend Eisenstein operator-(Eisenstein x, const Eisenstein& y) { return x -= y; }
  friend Eisenstein operator*(Eisenstein x, const Eisenstein& y) { return x *= y; }
  friend Eisenstein operator/(Eisenstein x, const Eisenstein& y) { return x /= y; }
  friend Eisenstein operator-(const Eisenstein& x) { return {Rational(-x.a_), Rational(-x.b_)}; }
  friend bool operator==(const Eisenstein& x, const Eisenstein& y) {
    return x.a_ == y.a_ && x.b_ == y.b_;
  }
  friend bool operator!=(const Eisenstein& x, const Eisenstein& y) { return !(x == y); }

  Complex to_complex() const;

 private:
  Rational a_{0};
  Rational b_{0};
};

std::ostream& operator<<(std::ostream& os, const Eisenstein& x);

/// Accepts "a", "b w", "a+b w", "a-b w" (spaces optional, a and b as p/q).
Eisenstein parse_eisenstein(std::string_view text);
std::string to_string(const Eisenstein& x);

template <class F>
struct FieldTraits;

template <>
struct FieldTraits<Rational> {
  static constexpr bool exact = true;
  static constexpr std::string_view name = "rational";
  static bool is_zero(const Rational& x) { return sgn(x) == 0; }
  static Complex to_complex(const Rational& x) { return {x.get_d(), 0.0}; }
  static std::string format(const Rational& x) { return to_string(x); }
  static Rational parse(std::string_view s) { return parse_rational(s); }
  /// Snap a numeric value back into the field; nullopt when it is visibly not in it.
  static std::optional<Rational> snap(Complex z, std::int64_t max_den, double tol);
};

template <>
struct FieldTraits<Eisenstein> {
  static constexpr bool exact = true;
  static constexpr std::string_view name = "eisenstein";
  static bool is_zero(const Eisenstein& x) { return x.is_zero(); }
  static Complex to_complex(const Eisenstein& x) { return x.to_complex(); }
  static std::string format(const Eisenstein& x) { return to_string(x); }
  static Eisenstein parse(std::string_view s) { return parse_eisenstein(s); }
  static std::optional<Eisenstein> snap(Complex z, std::int64_t max_den, double tol);
};

template <>
struct FieldTraits<Complex> {
  static constexpr bool exact = false;
  static constexpr std::string_view name = "complex";
  static Complex to_complex(const Complex& x) { return x; }
};

template <class F>
concept ExactField = FieldTraits<F>::exact;

template <class F>
concept Field = requires(F a, F b) {
  { a + b } -> std::convertible_to<F>;
  { a - b } -> std::convertible_to<F>;
  { a * b } -> std::convertible_to<F>;
  { a / b } -> std::convertible_to<F>;
  { FieldTraits<F>::to_complex(a) } -> std::same_as<Complex>;
};

template <ExactField F>
bool is_zero(const F& x) {
  return FieldTraits<F>::is_zero(x);
}

template <class F>
Complex to_complex(const F& x) {
  return FieldTraits<F>::to_complex(x);
}

template <ExactField F>
bool scalar_equal(const F& x, const F& y) {
  return x == y;
}

/// Complex-float equality: |x - y| <= tol * max(1, |x|, |y|).
inline bool approx_equal(Complex x, Complex y, double tol) {
  const double scale = std::max({1.0, std::abs(x), std::abs(y)});
  return std::abs(x - y) <= tol * scale;
}

inline constexpr double kComplexTolerance = 1e-12;

inline bool scalar_equal(Complex x, Complex y) { return approx_equal(x, y, kComplexTolerance); }

}  // namespace dhb
