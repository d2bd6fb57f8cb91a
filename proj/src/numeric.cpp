#include "dhb/numeric.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

namespace dhb {

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double a71 = 35.0 / 384, a73 = 500.0 / 1113, a74 = 125.0 / 192, a75 = -2187.0 / 6784, a76 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200, e6 = 22.0 / 525,
                 e7 = -1.0 / 40;

bool all_finite(const CVector& v) {
  return std::all_of(v.begin(), v.end(), [](Complex x) { return std::isfinite(x.real()) && std::isfinite(x.imag()); });
}

double max_abs(const CVector& v) {
  double m = 0;
  for (Complex x : v) m = std::max(m, std::abs(x));
  return m;
}

double segment_distance(Complex a, Complex b, Complex p) {
  const Complex d = b - a;
  const double len2 = std::norm(d);
  if (len2 == 0) return std::abs(p - a);
  const double s = std::clamp(((p - a) * std::conj(d)).real() / len2, 0.0, 1.0);
  return std::abs(p - (a + s * d));
}

std::string format_complex(Complex z) {
  std::ostringstream os;
  os << z.real() << (z.imag() < 0 ? "" : "+") << z.imag() << "i";
  return os.str();
}

}  // namespace

OdeOutcome dopri5(const OdeRhs& f, CVector& y, double s0, const std::vector<double>& stops,
                  const IntegratorOptions& opts, const std::function<void(double, const CVector&)>& on_stop) {
  OdeOutcome out;
  out.reached = s0;
  if (stops.empty()) return out;
  const std::size_t n = y.size();
  const double span = std::abs(stops.back() - s0);
  double h = opts.initial_step * (span > 0 ? span : 1.0);
  const double hmin = opts.min_step * (span > 0 ? span : 1.0);

  CVector k1(n), k2(n), k3(n), k4(n), k5(n), k6(n), k7(n), tmp(n), ynew(n);
  double s = s0;
  f(s, y, k1);
  std::size_t steps = 0;

  const auto fail = [&](const std::string& why) {
    out.completed = false;
    out.reached = s;
    out.reason = why;
    return out;
  };

  for (double target : stops) {
    while (s < target) {
      if (++steps > opts.max_steps) return fail("step limit reached");
      const bool last = h >= target - s;
      const double hh = last ? target - s : h;

      for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + hh * (a21 * k1[i]);
      f(s + c2 * hh, tmp, k2);
      for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + hh * (a31 * k1[i] + a32 * k2[i]);
      f(s + c3 * hh, tmp, k3);
      for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + hh * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
      f(s + c4 * hh, tmp, k4);
      for (std::size_t i = 0; i < n; ++i)
        tmp[i] = y[i] + hh * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
      f(s + c5 * hh, tmp, k5);
      for (std::size_t i = 0; i < n; ++i)
        tmp[i] = y[i] + hh * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
      f(s + hh, tmp, k6);
      for (std::size_t i = 0; i < n; ++i)
        ynew[i] = y[i] + hh * (a71 * k1[i] + a73 * k3[i] + a74 * k4[i] + a75 * k5[i] + a76 * k6[i]);
      f(s + hh, ynew, k7);

      double err = 0;
      for (std::size_t i = 0; i < n; ++i) {
        const Complex ei =
            hh * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
        const double sc = opts.tol * (1.0 + std::max(std::abs(y[i]), std::abs(ynew[i])));
        err = std::max(err, std::abs(ei) / sc);
      }
      if (!std::isfinite(err) || !all_finite(ynew) || !all_finite(k7)) err = 1e10;

      if (err <= 1.0) {
        s = last ? target : s + hh;
        y = ynew;
        k1 = k7;
        ++out.accepted;
        if (max_abs(y) > opts.blowup) return fail("blow-up: |x| exceeded " + std::to_string(opts.blowup));
        const double fac = err == 0 ? 5.0 : std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);
        const double hnext = hh * fac;
        if (!last || hnext > h) h = hnext;
      } else {
        ++out.rejected;
        h = hh * std::clamp(0.9 * std::pow(err, -0.2), 0.1, 0.9);
        if (h < hmin) return fail("step size underflow");
      }
    }
    on_stop(target, y);
  }
  out.reached = s;
  return out;
}

// ---------------------------------------------------------------------------

std::vector<double> uniform_times(double t_end, std::size_t samples) {
  if (samples < 2) throw InvalidInput("need at least two sample times");
  std::vector<double> t(samples);
  for (std::size_t i = 0; i < samples; ++i) t[i] = t_end * static_cast<double>(i) / static_cast<double>(samples - 1);
  return t;
}

Trajectory integrate_quadratic(const QuadraticSystem<Complex>& sys, const CVector& x0, const std::vector<double>& times,
                               const IntegratorOptions& opts, const std::optional<LinearForm<Complex>>& cofactor) {
  const std::size_t n = sys.dim();
  if (x0.size() != n) throw DimensionMismatch("initial state has wrong dimension");
  if (!all_finite(x0)) throw InvalidInput("initial state is not finite");
  if (!(opts.tol > 0)) throw InvalidInput("tolerance must be positive");
  if (times.empty()) throw InvalidInput("no sample times");
  if (!std::is_sorted(times.begin(), times.end())) throw InvalidInput("sample times must increase");
  if (cofactor && cofactor->coeffs.size() != n) throw DimensionMismatch("cofactor has wrong dimension");

  const Tensor3<Complex>& a = sys.tensor();
  const OdeRhs rhs = [&](double, const CVector& y, CVector& dy) {
    for (std::size_t i = 0; i < n; ++i) {
      Complex acc(0);
      for (std::size_t j = 0; j < n; ++j) {
        Complex row(0);
        for (std::size_t k = 0; k < n; ++k) row += a(i, j, k) * y[k];
        acc += row * y[j];
      }
      dy[i] = acc;
    }
    if (cofactor) {
      Complex l(0);
      for (std::size_t i = 0; i < n; ++i) l += cofactor->coeffs[i] * y[i];
      dy[n] = l;
    }
  };

  Trajectory traj;
  traj.tol = opts.tol;
  CVector y = x0;
  if (cofactor) y.push_back(Complex(0));
  const auto record = [&](double t, const CVector& state) {
    traj.t.push_back(t);
    traj.x.emplace_back(state.begin(), state.begin() + static_cast<std::ptrdiff_t>(n));
    if (cofactor) traj.cofactor_integral.push_back(state[n]);
  };
  record(times.front(), y);
  const std::vector<double> rest(times.begin() + 1, times.end());
  const OdeOutcome res = dopri5(rhs, y, times.front(), rest, opts, record);
  if (!res.completed) {
    traj.truncated = true;
    traj.truncation_reason = res.reason + " at t = " + std::to_string(res.reached);
  }
  return traj;
}

Trajectory integrate_quadratic(const QuadraticSystem<Complex>& sys, const CVector& x0, double t_end,
                               std::size_t samples, const IntegratorOptions& opts,
                               const std::optional<LinearForm<Complex>>& cofactor) {
  return integrate_quadratic(sys, x0, uniform_times(t_end, samples), opts, cofactor);
}

// ---------------------------------------------------------------------------

double min_pole_distance(const std::vector<Complex>& poles) {
  double d = INFINITY;
  for (std::size_t i = 0; i < poles.size(); ++i)
    for (std::size_t j = i + 1; j < poles.size(); ++j) d = std::min(d, std::abs(poles[i] - poles[j]));
  return d;
}

double path_pole_distance(const Path& path, const std::vector<Complex>& poles) {
  double d = INFINITY;
  for (Complex a : poles) {
    if (path.points.size() == 1) d = std::min(d, std::abs(path.points[0] - a));
    for (std::size_t i = 0; i + 1 < path.points.size(); ++i)
      d = std::min(d, segment_distance(path.points[i], path.points[i + 1], a));
  }
  return d;
}

void check_clearance(const Path& path, const std::vector<Complex>& poles) {
  if (path.points.size() < 2) throw InvalidInput("a path needs at least two points");
  const double d = path_pole_distance(path, poles);
  if (d < path.clearance)
    throw ClearanceViolation("path passes within " + std::to_string(d) + " of a pole (clearance " +
                             std::to_string(path.clearance) + "); move the waypoints away from the poles");
}

Path default_path(const std::vector<Complex>& poles) {
  static const std::array<Complex, 3> offsets{Complex(0.31, 0.17), Complex(0.12, 0.43), Complex(-0.27, 0.29)};
  Complex centroid(0);
  for (Complex a : poles) centroid += a;
  if (!poles.empty()) centroid /= static_cast<double>(poles.size());
  const double r = poles.size() >= 2 ? min_pole_distance(poles) : 1.0;
  for (int turn = 0; turn < 12; ++turn) {
    const Complex rot = std::polar(1.0, M_PI * turn / 6.0);
    Path path;
    path.clearance = 0.1 * r;
    for (Complex o : offsets) path.points.push_back(centroid + r * rot * o);
    if (path_pole_distance(path, poles) >= path.clearance) return path;
  }
  throw ClearanceViolation("no default path keeps the clearance; supply waypoints explicitly");
}

Path perturb_path(const Path& path, Complex shift) {
  Path out = path;
  if (out.points.size() == 2) {
    out.points.insert(out.points.begin() + 1, 0.5 * (out.points[0] + out.points[1]) + shift);
    return out;
  }
  for (std::size_t i = 1; i + 1 < out.points.size(); ++i) out.points[i] += shift;
  return out;
}

double ODESolution::wronskian_drift() const {
  double d = 0;
  for (const auto& s : samples) d = std::max(d, std::abs(s.y1 * s.dy2 - s.y2 * s.dy1 - s.w) / std::abs(s.w));
  return d;
}

ODESolution integrate_fuchsian(const FuchsianEquation& eq, const Path& path, const IntegratorOptions& opts) {
  if (!eq.q) throw InvalidInput("Fuchsian equation without a potential");
  check_clearance(path, eq.poles);
  if (path.samples_per_segment == 0) throw InvalidInput("samples_per_segment must be positive");
  const bool normal = eq.normal_form();
  ODESolution sol;
  sol.normal_form = normal;
  sol.tol = opts.tol;

  // State (y1, y1', y2, y2'[, W]).
  CVector y{Complex(1), Complex(0), Complex(0), Complex(1)};
  if (!normal) y.push_back(Complex(1));
  const auto sample = [&](Complex z, const CVector& st) {
    sol.samples.push_back({z, st[0], st[1], st[2], st[3], normal ? Complex(1) : st[4], normal ? Complex(0) : eq.p(z)});
  };
  sample(path.points.front(), y);

  std::vector<double> stops(path.samples_per_segment);
  for (std::size_t j = 0; j < stops.size(); ++j)
    stops[j] = static_cast<double>(j + 1) / static_cast<double>(path.samples_per_segment);

  for (std::size_t seg = 0; seg + 1 < path.points.size(); ++seg) {
    const Complex z0 = path.points[seg], dz = path.points[seg + 1] - z0;
    const OdeRhs rhs = [&](double s, const CVector& st, CVector& d) {
      const Complex z = z0 + s * dz;
      const Complex q = eq.q(z);
      const Complex p = normal ? Complex(0) : eq.p(z);
      d[0] = dz * st[1];
      d[1] = dz * (-p * st[1] - q * st[0]);
      d[2] = dz * st[3];
      d[3] = dz * (-p * st[3] - q * st[2]);
      if (!normal) d[4] = dz * (-p * st[4]);
    };
    const OdeOutcome res =
        dopri5(rhs, y, 0.0, stops, opts, [&](double s, const CVector& st) { sample(s == 1.0 ? path.points[seg + 1] : z0 + s * dz, st); });
    if (!res.completed)
      throw IntegrationFailure("Fuchsian integration stopped on segment " + std::to_string(seg) + ": " + res.reason);
  }
  return sol;
}

// ---------------------------------------------------------------------------

BrioschiSamples brioschi(const ODESolution& sol, const ComplexFunction& q_normal, const std::vector<Complex>& poles) {
  BrioschiSamples bs;
  bs.poles = poles;
  bs.tol = sol.tol;
  for (const auto& s : sol.samples) {
    if (std::abs(s.y1) < 1e-8 * std::max(1.0, std::abs(s.y2)))
      throw ResampleRequired("y1 vanishes near z = " + format_complex(s.z) +
                             "; perturb the path midpoint and integrate again");
    const Complex u = s.y1 * s.y1 / s.w;
    const Complex q = q_normal(s.z);
    BrioschiSample b;
    b.z = s.z;
    b.tau = s.y2 / s.y1;
    const Complex x0 = (s.y1 * s.dy1 + 0.5 * s.p * s.y1 * s.y1) / s.w;
    b.x.push_back(x0);
    for (Complex a : poles) b.x.push_back(x0 - u / (s.z - a));
    // dX/dtau = (dX/dz) (dz/dtau) with dtau/dz from the integrated pair, so the
    // residual sees the integration error through y1 y2' - y1' y2 versus W.
    const Complex ratio = s.w / (s.y1 * s.dy2 - s.dy1 * s.y2);
    for (Complex x : b.x) b.dx.push_back((x * x - q * u * u) * ratio);
    bs.samples.push_back(std::move(b));
  }
  return bs;
}

double ResidualReport::max() const {
  double m = 0;
  for (double r : equations) m = std::max(m, r);
  for (double r : constraints) m = std::max(m, r);
  return m;
}

ResidualReport gdhb_residual(const QuadraticSystem<Complex>& sys, const std::vector<QuadricForm<Complex>>& constraints,
                             const BrioschiSamples& bs) {
  const std::size_t n = sys.dim();
  ResidualReport rep;
  rep.label = "gdhb";
  rep.tol = bs.tol;
  rep.equations.assign(n, 0.0);
  rep.constraints.assign(constraints.size(), 0.0);
  for (const auto& c : constraints)
    if (c.dim() != n) throw DimensionMismatch("constraint quadric has wrong dimension");
  for (const auto& s : bs.samples) {
    if (s.x.size() != n) throw DimensionMismatch("Brioschi samples do not match the system dimension");
    const double big = max_abs(s.x);
    const double scale = std::max(1.0, big * big);
    const CVector rhs = evaluate_field(sys, s.x);
    for (std::size_t k = 0; k < n; ++k) rep.equations[k] = std::max(rep.equations[k], std::abs(s.dx[k] - rhs[k]) / scale);
    for (std::size_t c = 0; c < constraints.size(); ++c)
      rep.constraints[c] = std::max(rep.constraints[c], std::abs(constraints[c](s.x)) / scale);
    ++rep.samples;
  }
  return rep;
}

ResidualReport invariance_drift(const Trajectory& traj, const QuadricForm<Complex>& q,
                                const std::optional<LinearForm<Complex>>& cofactor) {
  ResidualReport rep;
  rep.label = "invariance";
  rep.tol = traj.tol;
  rep.constraints.assign(1, 0.0);
  if (traj.x.empty()) return rep;
  if (q.dim() != traj.x.front().size()) throw DimensionMismatch("quadric does not match the trajectory");
  const bool with_l = cofactor && !std::all_of(cofactor->coeffs.begin(), cofactor->coeffs.end(),
                                               [](Complex c) { return c == Complex(0); });
  if (with_l && traj.cofactor_integral.size() != traj.x.size())
    throw InvalidInput("trajectory was integrated without the cofactor integral");
  const Complex q0 = q(traj.x.front());
  for (std::size_t i = 0; i < traj.x.size(); ++i) {
    Complex v = q(traj.x[i]);
    if (with_l) v *= std::exp(-traj.cofactor_integral[i]);
    rep.constraints[0] = std::max(rep.constraints[0], std::abs(v - q0));
    ++rep.samples;
  }
  return rep;
}

}  // namespace dhb
