#pragma once

// Floating-point side: adaptive Runge-Kutta integration of quadratic systems
// and of second-order Fuchsian equations along complex polylines, Brioschi
// variables, and residual reports.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "dhb/errors.hpp"
#include "dhb/fuchsian.hpp"
#include "dhb/linalg.hpp"
#include "dhb/polynomial.hpp"
#include "dhb/quadratic.hpp"
#include "dhb/scalar.hpp"

namespace dhb {

using CVector = Vector<Complex>;
using ComplexFunction = std::function<Complex(Complex)>;

struct IntegratorOptions {
  double tol = 1e-10;          // local error per step, mixed absolute/relative
  double initial_step = 1e-3;  // as a fraction of the interval
  double min_step = 1e-14;     // as a fraction of the interval
  double blowup = 1e12;        // |x| beyond this counts as blow-up
  std::size_t max_steps = 5000000;
};

// ---------------------------------------------------------------------------
// Core Dormand-Prince 5(4) stepper on a complex state with real time.

using OdeRhs = std::function<void(double, const CVector&, CVector&)>;

struct OdeOutcome {
  bool completed = true;
  double reached = 0;
  std::string reason;
  std::size_t accepted = 0;
  std::size_t rejected = 0;
};

/// Integrates y' = f(s, y) from s0 through the increasing times `stops`,
/// landing on each and reporting the state there.  Stops early (completed =
/// false) on step underflow, non-finite values or |y| > opts.blowup.
OdeOutcome dopri5(const OdeRhs& f, CVector& y, double s0, const std::vector<double>& stops,
                  const IntegratorOptions& opts, const std::function<void(double, const CVector&)>& on_stop);

// ---------------------------------------------------------------------------
// Quadratic systems.

struct Trajectory {
  std::vector<double> t;
  std::vector<CVector> x;
  std::vector<Complex> cofactor_integral;  // int_0^t L(x) ds, filled when a cofactor is given
  bool truncated = false;
  std::string truncation_reason;
  double tol = 0;
};

/// Samples at `times` (times[0] is the start).  Blow-up truncates the
/// trajectory and sets the flag.
Trajectory integrate_quadratic(const QuadraticSystem<Complex>& sys, const CVector& x0, const std::vector<double>& times,
                               const IntegratorOptions& opts = {},
                               const std::optional<LinearForm<Complex>>& cofactor = std::nullopt);

/// Uniform samples on [0, t_end].
Trajectory integrate_quadratic(const QuadraticSystem<Complex>& sys, const CVector& x0, double t_end,
                               std::size_t samples, const IntegratorOptions& opts = {},
                               const std::optional<LinearForm<Complex>>& cofactor = std::nullopt);

std::vector<double> uniform_times(double t_end, std::size_t samples);

// ---------------------------------------------------------------------------
// Paths and Fuchsian equations.

struct Path {
  std::vector<Complex> points;
  double clearance = 0;
  std::size_t samples_per_segment = 20;
};

double min_pole_distance(const std::vector<Complex>& poles);

/// Distance from the polyline to the nearest pole.
double path_pole_distance(const Path& path, const std::vector<Complex>& poles);

/// Throws ClearanceViolation when the path comes closer than path.clearance to a pole.
void check_clearance(const Path& path, const std::vector<Complex>& poles);

/// Two segments through the pole centroid region, scaled by the minimum pole
/// distance, rotated until the clearance 0.1 * (min pole distance) holds.
Path default_path(const std::vector<Complex>& poles);

/// Moves every interior waypoint (or the segment midpoints of a two-point
/// path) by `shift`; used after a ResampleRequired.
Path perturb_path(const Path& path, Complex shift);

/// y'' + p y' + q y = 0; p empty means the normal form y'' + Q y = 0.
struct FuchsianEquation {
  ComplexFunction q;
  ComplexFunction p;
  std::vector<Complex> poles;
  bool normal_form() const { return !p; }
};

struct FuchsianSample {
  Complex z;
  Complex y1, dy1, y2, dy2;
  Complex w;  // reference Wronskian: constant in the normal form, integrated otherwise
  Complex p;  // p(z), zero in the normal form
};

struct ODESolution {
  std::vector<FuchsianSample> samples;
  bool normal_form = true;
  double tol = 0;
  /// max |y1 y2' - y2 y1' - W| / |W| over the samples.
  double wronskian_drift() const;
};

/// Solutions with (y1, y1') = (1, 0) and (y2, y2') = (0, 1) at the path start.
ODESolution integrate_fuchsian(const FuchsianEquation& eq, const Path& path, const IntegratorOptions& opts = {});

// ---------------------------------------------------------------------------
// Brioschi variables and residuals.

struct BrioschiSample {
  Complex z, tau;
  CVector x;   // X_0..X_m
  CVector dx;  // dX/dtau in closed form
};

struct BrioschiSamples {
  std::vector<BrioschiSample> samples;
  std::vector<Complex> poles;
  double tol = 0;
};

/// X_0 = y1 y1' / W, X_j = X_0 - (y1^2 / W) / (z - a_j) and dX_k/dtau = X_k^2 - Q u^2
/// with u = y1^2 / W.  q_normal is the normal-form potential (for general
/// equations the reduced one).  Throws ResampleRequired where y1 vanishes.
BrioschiSamples brioschi(const ODESolution& sol, const ComplexFunction& q_normal, const std::vector<Complex>& poles);

struct ResidualReport {
  std::string label;
  std::vector<double> equations;    // per component, maximized over samples
  std::vector<double> constraints;  // per constraint quadric
  std::size_t samples = 0;
  double tol = 0;        // integrator tolerance used
  double threshold = 0;  // acceptance threshold the report is judged against
  double max() const;
  bool within() const { return max() <= threshold; }
};

/// |dX_k/dtau - RHS_k| / max(1, |X|^2) and |C(X)| / max(1, |X|^2), maximized over samples.
ResidualReport gdhb_residual(const QuadraticSystem<Complex>& sys, const std::vector<QuadricForm<Complex>>& constraints,
                             const BrioschiSamples& bs);

/// max |Q(x(t)) exp(-int L) - Q(x(0))|; the trajectory must carry the cofactor
/// integral when L is given.
ResidualReport invariance_drift(const Trajectory& traj, const QuadricForm<Complex>& q,
                                const std::optional<LinearForm<Complex>>& cofactor = std::nullopt);

// ---------------------------------------------------------------------------
// Conversions from exact data.

template <class F>
QuadraticSystem<Complex> to_complex(const QuadraticSystem<F>& sys) {
  return QuadraticSystem<Complex>(sys.tensor().template map<Complex>([](const F& x) { return to_complex(x); }));
}

template <class F>
QuadricForm<Complex> to_complex(const QuadricForm<F>& q) {
  return QuadricForm<Complex>(to_complex(q.matrix()));
}

template <class F>
LinearForm<Complex> to_complex(const LinearForm<F>& l) {
  return {to_complex(l.coeffs)};
}

template <ExactField F>
ComplexFunction complex_function(const RationalFunction<F>& r) {
  return [r](Complex z) { return r(z); };
}

template <ExactField F>
FuchsianEquation normal_form_equation(const FuchsianData<F>& fd) {
  return {complex_function(q_rational_from_fuchsian(fd)), {}, to_complex(fd.poles)};
}

// ---------------------------------------------------------------------------
// The Brioschi pipeline end to end.

struct BrioschiRun {
  Path path;
  ODESolution solution;
  BrioschiSamples samples;
  ResidualReport residual;
};

/// Integrates the normal-form equation of fd, builds the Brioschi variables and
/// measures the gDHB residual including the cross-ratio constraints.
template <ExactField F>
BrioschiRun run_brioschi(const FuchsianData<F>& fd, const IntegratorOptions& opts = {},
                         std::optional<Path> path = std::nullopt) {
  const FuchsianEquation eq = normal_form_equation(fd);
  BrioschiRun run;
  run.path = path ? *path : default_path(eq.poles);
  run.solution = integrate_fuchsian(eq, run.path, opts);
  run.samples = brioschi(run.solution, eq.q, eq.poles);
  const GDHBSystem<F> g = build_gdhb(fd);
  std::vector<QuadricForm<Complex>> constraints;
  for (const auto& c : g.constraints) constraints.push_back(to_complex(c));
  run.residual = gdhb_residual(to_complex(g.system), constraints, run.samples);
  return run;
}

}  // namespace dhb
