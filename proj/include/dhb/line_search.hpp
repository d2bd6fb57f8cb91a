#pragma once

// Floating-point part of the basis search for the rank-4 recognizer: lines v
// with v.v proportional to a given unit, found by random-restart Newton.

#include <cstdint>
#include <vector>

#include "dhb/linalg.hpp"
#include "dhb/quadratic.hpp"
#include "dhb/scalar.hpp"

namespace dhb {

struct SquareLine {
  Vector<Complex> v;  // scaled so that its largest entry is 1
  Complex lambda;     // base(v, v) = lambda e
  Complex quadric;    // B(v, v)
};

struct LineSearchOptions {
  int restarts = 300;
  int newton_iterations = 60;
  std::uint64_t seed = 1;
  double tolerance = 1e-12;
};

/// Distinct lines with base(v, v) = lambda e, excluding the line of e itself.
std::vector<SquareLine> find_square_lines(const Tensor3<Complex>& base, const Matrix<Complex>& quadric,
                                          const Vector<Complex>& e, const LineSearchOptions& opts);

/// Candidate theorem bases from four lines with B(v, v) = 0: rows x_j = (e - s_j l_j)/2
/// where sum s_j l_j = 2e.  Candidates are ordered by residual of that solve.
std::vector<Matrix<Complex>> candidate_bases(const std::vector<SquareLine>& lines, const Vector<Complex>& e,
                                             double quadric_tolerance, std::size_t max_candidates);

}  // namespace dhb
