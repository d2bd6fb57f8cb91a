#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "dhb/corpus.hpp"
#include "dhb/numeric.hpp"
#include "test_support.hpp"

using namespace dhb;
using R = Rational;
using E = Eisenstein;

namespace {

QuadraticSystem<Complex> square_system(std::size_t n) {
  Tensor3<Complex> t(n);
  for (std::size_t i = 0; i < n; ++i) t(i, i, i) = 1.0;
  return QuadraticSystem<Complex>(t);
}

Path segment(Complex a, Complex b, std::size_t samples = 20) {
  Path p;
  p.points = {a, b};
  p.samples_per_segment = samples;
  return p;
}

double rel_err(Complex got, Complex want) { return std::abs(got - want) / std::max(1.0, std::abs(want)); }

}  // namespace

TEST_CASE("Euler top conserves X1^2 - X2^2 and X2^2 - X3^2") {
  const auto sys = to_complex(euler_top());
  const auto traj = integrate_quadratic(sys, {1.0, 0.5, 0.25}, 0.5, 51);
  REQUIRE_FALSE(traj.truncated);
  const auto& x0 = traj.x.front();
  for (const auto& x : traj.x) {
    CHECK(std::abs((x[0] * x[0] - x[1] * x[1]) - (x0[0] * x0[0] - x0[1] * x0[1])) <= 1e-9);
    CHECK(std::abs((x[1] * x[1] - x[2] * x[2]) - (x0[1] * x0[1] - x0[2] * x0[2])) <= 1e-9);
  }
  QuadricForm<Complex> q(3);
  q.add_monomial(0, 0, 1.0);
  q.add_monomial(1, 1, -1.0);
  CHECK(invariance_drift(traj, q).max() <= 1e-9);
}

TEST_CASE("zero system stays put") {
  const QuadraticSystem<Complex> zero(Tensor3<Complex>(3));
  const CVector x0{1.0, Complex(0, 2), -3.0};
  const auto traj = integrate_quadratic(zero, x0, 2.0, 11);
  CHECK_FALSE(traj.truncated);
  for (const auto& x : traj.x) CHECK(x == x0);
  QuadricForm<Complex> q(3);
  q.add_monomial(0, 1, 1.0);
  CHECK(invariance_drift(traj, q).max() == 0.0);
}

TEST_CASE("dX/dt = X^2 follows 1/(1-t) and flags blow-up") {
  const auto sys = square_system(1);
  const auto traj = integrate_quadratic(sys, {1.0}, 0.9, 91);
  REQUIRE_FALSE(traj.truncated);
  for (std::size_t i = 0; i < traj.t.size(); ++i) CHECK(std::abs(traj.x[i][0] - 1.0 / (1.0 - traj.t[i])) <= 1e-9);

  const auto past = integrate_quadratic(sys, {1.0}, 2.0, 21);
  CHECK(past.truncated);
  CHECK_FALSE(past.truncation_reason.empty());
  for (double t : past.t) CHECK(t < 1.0);
}

TEST_CASE("integrator input checks") {
  const auto sys = square_system(2);
  CHECK_THROWS_AS(integrate_quadratic(sys, {1.0}, 1.0, 5), DimensionMismatch);
  CHECK_THROWS_AS(integrate_quadratic(sys, {1.0, NAN}, 1.0, 5), InvalidInput);
  IntegratorOptions bad;
  bad.tol = 0;
  CHECK_THROWS_AS(integrate_quadratic(sys, {1.0, 1.0}, 1.0, 5, bad), InvalidInput);
}

TEST_CASE("homogenized scalar Riccati gives tan") {
  Tensor3<R> quad(1);
  quad(0, 0, 0) = 1;
  const auto sys = to_complex(homogenize(quad, Matrix<R>(1, 1), Vector<R>{1}));
  const auto traj = integrate_quadratic(sys, {0.0, 1.0}, 1.2, 25);
  REQUIRE_FALSE(traj.truncated);
  for (std::size_t i = 0; i < traj.t.size(); ++i) {
    CHECK(rel_err(traj.x[i][0], std::tan(traj.t[i])) <= 1e-9);
    CHECK(traj.x[i][1] == Complex(1.0));
  }
}

TEST_CASE("homogenization matches direct integration of the inhomogeneous field") {
  std::mt19937_64 rng(31);
  for (int t = 0; t < 10; ++t) {
    const auto quad = test::random_symmetric_tensor(rng, 2);
    Matrix<R> lin(2, 2);
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j) lin(i, j) = test::random_rational(rng);
    const auto cst = test::random_vector(rng, 2);
    const auto sys = to_complex(homogenize(quad, lin, cst));
    const CVector x0{0.1 * t, -0.05};
    const auto traj = integrate_quadratic(sys, {x0[0], x0[1], 1.0}, 0.1, 5);

    const auto qc = quad.map<Complex>([](const R& x) { return to_complex(x); });
    const auto lc = to_complex(lin);
    const auto cc = to_complex(cst);
    const OdeRhs direct = [&](double, const CVector& y, CVector& dy) {
      for (std::size_t i = 0; i < 2; ++i) {
        dy[i] = cc[i];
        for (std::size_t j = 0; j < 2; ++j) {
          dy[i] += lc(i, j) * y[j];
          for (std::size_t k = 0; k < 2; ++k) dy[i] += qc(i, j, k) * y[j] * y[k];
        }
      }
    };
    CVector y = x0;
    std::vector<CVector> got;
    IntegratorOptions opts;
    const auto res = dopri5(direct, y, 0.0, {0.025, 0.05, 0.075, 0.1}, opts,
                            [&](double, const CVector& s) { got.push_back(s); });
    if (traj.truncated || !res.completed) continue;
    for (std::size_t i = 0; i < got.size(); ++i)
      for (std::size_t k = 0; k < 2; ++k) CHECK(rel_err(traj.x[i + 1][k], got[i][k]) <= 1e-8);
  }
}

TEST_CASE("Fuchsian equation with Q = 0") {
  const FuchsianEquation eq{[](Complex) { return Complex(0); }, {}, {}};
  const auto sol = integrate_fuchsian(eq, segment(0.0, 1.0));
  REQUIRE(sol.samples.size() == 21);
  for (const auto& s : sol.samples) {
    CHECK(std::abs(s.y1 - 1.0) <= 1e-12);
    CHECK(std::abs(s.y2 - s.z) <= 1e-12);
    CHECK(std::abs(s.dy1) <= 1e-12);
    CHECK(std::abs(s.dy2 - 1.0) <= 1e-12);
  }
  CHECK(sol.wronskian_drift() <= 1e-12);
}

TEST_CASE("Fuchsian equation with Q = -1 gives exponentials") {
  const FuchsianEquation eq{[](Complex) { return Complex(-1); }, {}, {}};
  Path path;
  path.points = {0.0, Complex(1, 1), 2.0};
  const auto sol = integrate_fuchsian(eq, path);
  for (const auto& s : sol.samples) {
    CHECK(rel_err(s.y1, std::cosh(s.z)) <= 1e-10);
    CHECK(rel_err(s.y2, std::sinh(s.z)) <= 1e-10);
    CHECK(rel_err(s.y1 + s.y2, std::exp(s.z)) <= 1e-10);
  }
  CHECK(sol.wronskian_drift() <= 1e-9);
}

TEST_CASE("hypergeometric potential: Wronskian drift and general form") {
  const HGParams<R> hg{frac(1, 2), frac(1, 2), 1};
  const auto [p, q] = hypergeometric_pq(hg);
  const auto qn = normal_form_reduce(p, q);
  const std::vector<Complex> poles{0.0, 1.0};
  const Path path = default_path(poles);
  for (const Complex z : path.points) {
    CHECK(z.imag() > 0);
    CHECK(std::abs(z) < 1.0);
  }
  const FuchsianEquation normal{complex_function(qn), {}, poles};
  const auto sol = integrate_fuchsian(normal, path);
  CHECK(sol.normal_form);
  CHECK(sol.wronskian_drift() <= 1e-9);

  const FuchsianEquation general{complex_function(q), complex_function(p), poles};
  const auto gsol = integrate_fuchsian(general, path);
  CHECK_FALSE(gsol.normal_form);
  CHECK(gsol.wronskian_drift() <= 1e-9);

  // The general-form basis is (1, p0/2), (0, 1) in normal-form coordinates at
  // the start, so tau_general = tau / (1 + p0 tau / 2).
  const auto a = brioschi(sol, normal.q, poles);
  const auto b = brioschi(gsol, normal.q, poles);
  REQUIRE(a.samples.size() == b.samples.size());
  const Complex half_p0 = 0.5 * general.p(path.points.front());
  for (std::size_t i = 0; i < a.samples.size(); ++i) {
    const Complex tau = a.samples[i].tau;
    CHECK(rel_err(b.samples[i].tau, tau / (1.0 + half_p0 * tau)) <= 1e-8);
  }
  const auto h2 = to_complex(halphen2_from_abc<R>({frac(-1, 8), frac(-1, 8), frac(-1, 8)}));
  CHECK(gdhb_residual(h2, {}, b).max() <= 1e-8);
}

TEST_CASE("path clearance") {
  const std::vector<Complex> poles{0.0, 1.0};
  Path across = segment(-1.0, 2.0);
  across.clearance = 0.1;
  CHECK_THROWS_AS(check_clearance(across, poles), ClearanceViolation);
  Path ok = segment(Complex(0, 1), Complex(1, 1));
  ok.clearance = 0.5;
  CHECK_NOTHROW(check_clearance(ok, poles));
  ok.clearance = 1.5;
  CHECK_THROWS_AS(check_clearance(ok, poles), ClearanceViolation);
  const FuchsianEquation eq{[](Complex z) { return 1.0 / (z * z); }, {}, {0.0}};
  Path through = segment(-1.0, 1.0);
  through.clearance = 0.1;
  CHECK_THROWS_AS(integrate_fuchsian(eq, through), ClearanceViolation);

  const std::vector<std::vector<Complex>> sets{
      {0.0, 1.0}, {0.0, 1.0, 2.0}, {1.0, std::polar(1.0, 2 * M_PI / 3), std::polar(1.0, -2 * M_PI / 3)},
      {Complex(0.3, 0.1), -2.0, Complex(0, 5), 7.0}, {5.0}};
  for (const auto& s : sets) {
    const Path p = default_path(s);
    CHECK(path_pole_distance(p, s) >= p.clearance);
    CHECK(p.clearance > 0);
  }
  const Path moved = perturb_path(segment(0.0, 1.0), Complex(0, 0.1));
  REQUIRE(moved.points.size() == 3);
  CHECK(moved.points[1] == Complex(0.5, 0.1));
}

TEST_CASE("Brioschi variables for Q = 0 with one pole") {
  const FuchsianEquation eq{[](Complex) { return Complex(0); }, {}, {-1.0}};
  const auto sol = integrate_fuchsian(eq, segment(0.0, Complex(1, 1)));
  const auto bs = brioschi(sol, eq.q, {-1.0});
  for (const auto& s : bs.samples) {
    CHECK(std::abs(s.tau - s.z) <= 1e-12);
    CHECK(std::abs(s.x[0]) <= 1e-12);
    CHECK(std::abs(s.x[1] + 1.0 / (s.z + 1.0)) <= 1e-12);
    CHECK(std::abs(s.dx[1] - s.x[1] * s.x[1]) <= 1e-13);
  }
  // dX_k/dtau = X_k^2 is the gDHB system with all coefficients zero.
  const auto rep = gdhb_residual(square_system(2), {}, bs);
  CHECK(rep.max() <= 1e-13);
  CHECK(rep.samples == bs.samples.size());
  CHECK(rep.equations.size() == 2);
}

TEST_CASE("Brioschi closed forms are self-consistent") {
  const auto run = run_brioschi(level3_fuchsian());
  const auto& poles = run.samples.poles;
  for (std::size_t i = 0; i < run.samples.samples.size(); ++i) {
    const auto& s = run.samples.samples[i];
    const auto& y = run.solution.samples[i];
    const Complex u = y.y1 * y.y1 / y.w;
    for (std::size_t j = 0; j < poles.size(); ++j)
      CHECK(std::abs((s.x[0] - s.x[j + 1]) - u / (s.z - poles[j])) <= 1e-14 * std::max(1.0, std::abs(s.x[0])));
  }
}

TEST_CASE("vanishing y1 asks for a new path") {
  ODESolution sol;
  sol.samples.push_back({0.5, 0.0, 1.0, 1.0, 0.0, -1.0, 0.0});
  CHECK_THROWS_AS(brioschi(sol, [](Complex) { return Complex(0); }, {}), ResampleRequired);
}

TEST_CASE("Halphen II residual of the hypergeometric Brioschi variables") {
  const auto fd = fuchsian_from_q(normal_form_reduce(hypergeometric_pq<R>({frac(1, 2), frac(1, 2), 1}).first,
                                                     hypergeometric_pq<R>({frac(1, 2), frac(1, 2), 1}).second),
                                  std::vector<R>{0, 1});
  const auto run = run_brioschi(fd);
  CHECK(run.solution.wronskian_drift() <= 1e-9);
  CHECK(run.residual.max() <= 1e-8);
  CHECK(run.residual.constraints.empty());
  // The same system written as Halphen II.
  const auto alt = gdhb_residual(to_complex(halphen2_from_abc<R>({frac(-1, 8), frac(-1, 8), frac(-1, 8)})), {},
                                 run.samples);
  CHECK(alt.max() <= 1e-8);
}

TEST_CASE("level-3 quadric drifts only through its cofactor") {
  const Level3 l3 = level3_system();
  const auto l = find_cofactor(l3.system, l3.quadric);
  REQUIRE(l);
  const auto sys = to_complex(l3.system);
  const CVector x0{Complex(0.3, 0.1), Complex(-0.2, 0.25), Complex(0.15, -0.1), Complex(0.05, 0.2)};
  const auto traj = integrate_quadratic(sys, x0, 1.0, 41, {}, to_complex(*l));
  REQUIRE_FALSE(traj.truncated);
  CHECK(invariance_drift(traj, to_complex(l3.quadric), to_complex(*l)).max() <= 1e-8);
  // Without the cofactor the quadric is not conserved.
  CHECK(invariance_drift(traj, to_complex(l3.quadric)).max() > 1e-4);
}
