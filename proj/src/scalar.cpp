#include "dhb/scalar.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>

#include "dhb/errors.hpp"

namespace dhb {

namespace {

std::string strip_spaces(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char ch : text) {
    if (!std::isspace(static_cast<unsigned char>(ch))) out.push_back(ch);
  }
  return out;
}

bool is_integer_literal(std::string_view s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  return std::all_of(s.begin() + static_cast<std::ptrdiff_t>(i), s.end(),
                     [](char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; });
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string s = strip_spaces(text);
  const auto slash = s.find('/');
  std::string num = s.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!is_integer_literal(num) || !is_integer_literal(den) || den[0] == '-' || den[0] == '+') {
    throw InvalidInput("not an exact rational: '" + std::string(text) + "'");
  }
  if (num[0] == '+') num.erase(0, 1);
  mpz_class n(num, 10);
  mpz_class d(den, 10);
  if (d == 0) throw InvalidInput("zero denominator: '" + std::string(text) + "'");
  Rational r(n, d);
  r.canonicalize();
  return r;
}

std::string to_string(const Rational& x) { return x.get_str(); }

Rational rationalize(double x, std::int64_t max_den) {
  if (!std::isfinite(x)) throw DomainError("cannot rationalize a non-finite value");
  // Convergents h/k of the continued fraction of x, stopping before k exceeds max_den.
  mpz_class h_prev = 1, h = static_cast<long>(std::floor(x));
  mpz_class k_prev = 0, k = 1;
  double frac = x - std::floor(x);
  for (int iter = 0; iter < 64 && frac > 1e-15; ++iter) {
    const double inv = 1.0 / frac;
    const double a = std::floor(inv);
    if (a > 1e15) break;
    mpz_class ai = static_cast<long>(a);
    mpz_class k_next = ai * k + k_prev;
    if (k_next > max_den) break;
    mpz_class h_next = ai * h + h_prev;
    h_prev = h;
    h = h_next;
    k_prev = k;
    k = k_next;
    frac = inv - a;
  }
  Rational r(h, k);
  r.canonicalize();
  return r;
}

Eisenstein& Eisenstein::operator*=(const Eisenstein& o) {
  // (a + bw)(c + dw) = ac - bd + (ad + bc - bd) w, using w^2 = -1 - w.
  Rational ac = a_ * o.a_;
  Rational bd = b_ * o.b_;
  Rational cross = a_ * o.b_ + b_ * o.a_;
  a_ = ac - bd;
  b_ = cross - bd;
  return *this;
}

Eisenstein& Eisenstein::operator/=(const Eisenstein& o) {
  const Rational n = o.norm();
  if (sgn(n) == 0) throw DomainError("Eisenstein division by zero");
  *this *= o.conj();
  a_ /= n;
  b_ /= n;
  return *this;
}

Complex Eisenstein::to_complex() const {
  const double b = b_.get_d();
  return {a_.get_d() - 0.5 * b, b * std::sqrt(3.0) / 2.0};
}

std::string to_string(const Eisenstein& x) {
  if (sgn(x.b()) == 0) return to_string(x.a());
  const std::string b = to_string(x.b());
  std::string w = b == "1" ? "w" : b == "-1" ? "-w" : b + " w";
  if (sgn(x.a()) == 0) return w;
  if (sgn(x.b()) > 0) return to_string(x.a()) + "+" + w;
  return to_string(x.a()) + w;  // b carries its own minus sign
}

std::ostream& operator<<(std::ostream& os, const Eisenstein& x) { return os << to_string(x); }

Eisenstein parse_eisenstein(std::string_view text) {
  std::string s = strip_spaces(text);
  if (s.empty()) throw InvalidInput("empty Eisenstein literal");
  if (s.back() != 'w') return Eisenstein(parse_rational(s));
  s.pop_back();
  // Split at the last sign that is not leading; rationals carry no inner signs.
  std::size_t split = std::string::npos;
  for (std::size_t i = s.size(); i-- > 1;) {
    if (s[i] == '+' || s[i] == '-') {
      split = i;
      break;
    }
  }
  std::string re = split == std::string::npos ? "0" : s.substr(0, split);
  std::string im = split == std::string::npos ? s : s.substr(split);
  if (im.empty() || im == "+") im = "1";
  if (im == "-") im = "-1";
  try {
    return {parse_rational(re), parse_rational(im)};
  } catch (const InvalidInput&) {
    throw InvalidInput("not an Eisenstein rational: '" + std::string(text) + "'");
  }
}

std::optional<Rational> FieldTraits<Rational>::snap(Complex z, std::int64_t max_den, double tol) {
  if (std::abs(z.imag()) > tol) return std::nullopt;
  Rational r = rationalize(z.real(), max_den);
  if (std::abs(r.get_d() - z.real()) > tol) return std::nullopt;
  return r;
}

std::optional<Eisenstein> FieldTraits<Eisenstein>::snap(Complex z, std::int64_t max_den,
                                                        double tol) {
  const double b = z.imag() * 2.0 / std::sqrt(3.0);
  const double a = z.real() + 0.5 * b;
  Eisenstein e(rationalize(a, max_den), rationalize(b, max_den));
  if (std::abs(e.to_complex() - z) > tol) return std::nullopt;
  return e;
}

}  // namespace dhb
