#pragma once

// Random exact instances shared by the unit tests.

#include <optional>
#include <random>

#include "dhb/linalg.hpp"
#include "dhb/quadratic.hpp"
#include "dhb/scalar.hpp"

namespace dhb::test {

inline Rational random_rational(std::mt19937_64& rng, int span = 6, int max_den = 5) {
  std::uniform_int_distribution<int> num(-span, span);
  std::uniform_int_distribution<int> den(1, max_den);
  return frac(num(rng), den(rng));
}

inline Rational random_nonzero_rational(std::mt19937_64& rng) {
  for (;;) {
    Rational r = random_rational(rng);
    if (sgn(r) != 0) return r;
  }
}

inline Vector<Rational> random_vector(std::mt19937_64& rng, std::size_t n) {
  Vector<Rational> v(n);
  for (auto& x : v) x = random_rational(rng);
  return v;
}

inline Tensor3<Rational> random_symmetric_tensor(std::mt19937_64& rng, std::size_t n) {
  Tensor3<Rational> t(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = j; k < n; ++k) t.set_symmetric(i, j, k, random_rational(rng));
  return t;
}

inline std::optional<Matrix<Rational>> random_invertible(std::mt19937_64& rng, std::size_t n) {
  Matrix<Rational> m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = random_rational(rng, 4, 3);
  if (is_zero(determinant(m))) return std::nullopt;
  return m;
}

/// Pairwise distinct random rationals.
inline std::vector<Rational> random_distinct(std::mt19937_64& rng, std::size_t count) {
  std::vector<Rational> out;
  while (out.size() < count) {
    Rational r = random_rational(rng, 9, 4);
    bool fresh = true;
    for (const auto& x : out) fresh = fresh && !(x == r);
    if (fresh) out.push_back(r);
  }
  return out;
}

}  // namespace dhb::test
