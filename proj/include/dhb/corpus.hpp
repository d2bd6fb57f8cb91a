#pragma once

// The printed example systems.

#include <vector>

#include "dhb/fuchsian.hpp"
#include "dhb/polynomial.hpp"
#include "dhb/quadratic.hpp"
#include "dhb/scalar.hpp"

namespace dhb {

/// Rewrites equations  sum_j lhs(r, j) X_j' = rhs_r(X)  into solved form X' = F(X).
template <ExactField F>
QuadraticSystem<F> solve_for_derivatives(const Matrix<F>& lhs, const std::vector<QuadricForm<F>>& rhs) {
  const std::size_t n = lhs.rows();
  if (!lhs.square() || rhs.size() != n) throw DimensionMismatch("derivative equations are not square");
  const Matrix<F> inv = inverse(lhs);
  std::vector<QuadricForm<F>> forms;
  for (std::size_t i = 0; i < n; ++i) {
    Matrix<F> b(n, n);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k) b(j, k) += inv(i, r) * rhs[r](j, k);
    forms.emplace_back(std::move(b));
  }
  return QuadraticSystem<F>::from_forms(forms);
}

QuadraticSystem<Rational> euler_top();

/// dN1/dt = a N1 - b N1 N2, dN2/dt = -c N1 - d N1 N2 with the dummy N3 = 1.
QuadraticSystem<Rational> lotka_volterra(const Rational& a, const Rational& b, const Rational& c,
                                         const Rational& d);

/// Halphen's first equation, stored solved for the derivatives.
QuadraticSystem<Rational> halphen1();

QuadraticSystem<Rational> halphen2(const HalphenABC<Rational>& abc);

/// The (X, W, V) system of the k = 0 Chazy case.
QuadraticSystem<Rational> chazy_k0_system();

struct Level3 {
  QuadraticSystem<Eisenstein> system;  // variables (W, X, Y, Z)
  QuadricForm<Eisenstein> quadric;
};
Level3 level3_system();

struct SecondOrderCoefficients {
  RationalFunction<Eisenstein> p;
  RationalFunction<Eisenstein> q;
};
/// (1 - t^3) y'' - 3 t^2 y' - t y = 0 divided by its leading coefficient.
SecondOrderCoefficients level3_picard_fuchs();

/// Poles 1, w, w^2 and the (alpha, beta) read off the reduced Picard-Fuchs potential.
FuchsianData<Eisenstein> level3_fuchsian();

QuadraticSystem<Rational> riccati(const Matrix<Rational>& a);

}  // namespace dhb
