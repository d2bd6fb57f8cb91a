#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "dhb/corpus.hpp"
#include "dhb/fuchsian.hpp"
#include "dhb/quadratic.hpp"
#include "test_support.hpp"

using namespace dhb;
using R = Rational;
using V = Vector<R>;

namespace {

Algebra<R> zero_algebra(std::size_t n) { return Algebra<R>(Tensor3<R>(n)); }

}  // namespace

TEST_CASE("Euler top tensor and algebra") {
  const auto sys = euler_top();
  CHECK(sys.tensor()(0, 1, 2) == 1);
  CHECK(sys.tensor()(0, 2, 1) == 1);
  CHECK(sys.tensor()(1, 0, 2) == 1);
  CHECK(sys.tensor()(2, 0, 1) == 1);
  CHECK(evaluate_field(sys, V{1, 1, 1}) == V{2, 2, 2});
  CHECK(evaluate_field(sys, V{0, 0, 0}) == V{0, 0, 0});
  const auto alg = system_to_algebra(sys);
  CHECK(multiply(alg, unit_vector<R>(3, 1), unit_vector<R>(3, 2)) == unit_vector<R>(3, 0));
  CHECK(multiply(alg, unit_vector<R>(3, 0), unit_vector<R>(3, 2)) == unit_vector<R>(3, 1));
  CHECK(multiply(alg, unit_vector<R>(3, 0), unit_vector<R>(3, 1)) == unit_vector<R>(3, 2));
  for (std::size_t i = 0; i < 3; ++i) CHECK(is_zero(multiply(alg, unit_vector<R>(3, i), unit_vector<R>(3, i))));
  CHECK(algebra_to_system(alg) == sys);
}

TEST_CASE("zero tensors are legal") {
  const auto alg = zero_algebra(2);
  CHECK(is_zero(multiply(alg, V{1, 2}, V{3, 4})));
  CHECK(is_zero(algebra_to_system(alg).tensor()(0, 0, 0)));
  CHECK(derivation_dimension(zero_algebra(3)) == 9);
  CHECK_FALSE(find_unit(zero_algebra(3)).has_value());
}

TEST_CASE("asymmetric tensors are rejected") {
  Tensor3<R> t(2);
  t(0, 0, 1) = 1;
  CHECK_THROWS_AS(QuadraticSystem<R>{t}, InvalidInput);
  CHECK_THROWS_AS(Algebra<R>{t}, InvalidInput);
}

TEST_CASE("multiply checks dimensions and is commutative") {
  const auto alg = system_to_algebra(halphen2({1, 2, 3}));
  CHECK_THROWS_AS(multiply(alg, V{1, 2}, V{1, 2, 3}), DimensionMismatch);
  std::mt19937_64 rng(3);
  for (int t = 0; t < 10; ++t) {
    const V u = test::random_vector(rng, 3), v = test::random_vector(rng, 3);
    CHECK(multiply(alg, u, v) == multiply(alg, v, u));
  }
}

TEST_CASE("round trip and basis-change commutation on random instances") {
  std::mt19937_64 rng(11);
  int checked = 0;
  while (checked < 100) {
    const std::size_t n = 2 + rng() % 3;
    const auto alg = Algebra<R>(test::random_symmetric_tensor(rng, n));
    CHECK(system_to_algebra(algebra_to_system(alg)) == alg);
    const auto m = test::random_invertible(rng, n);
    if (!m) continue;
    const LinearMap<R> map(*m);
    CHECK(system_to_algebra(change_vars(algebra_to_system(alg), map)) == change_basis(alg, contragredient(map)));
    ++checked;
  }
  const auto alg = Algebra<R>(test::random_symmetric_tensor(rng, 4));
  CHECK(change_basis(alg, LinearMap<R>::identity(4)) == alg);
  CHECK(change_vars(algebra_to_system(alg), LinearMap<R>::identity(4)) == algebra_to_system(alg));
}

TEST_CASE("singular maps are refused") {
  const auto alg = zero_algebra(2);
  const LinearMap<R> sing(Matrix<R>::from_rows({{1, 1}, {1, 1}}));
  CHECK_FALSE(sing.invertible());
  CHECK_THROWS_AS(change_basis(alg, sing), SingularMap);
}

TEST_CASE("Halphen II in the e-basis reproduces the printed table") {
  for (const HalphenABC<R>& abc : {HalphenABC<R>{frac(-1, 8), frac(-1, 8), frac(-1, 8)}, HalphenABC<R>{1, 2, 3},
                                   HalphenABC<R>{frac(2, 7), frac(-5, 3), 0}}) {
    const auto alg = change_basis(system_to_algebra(halphen2_from_abc(abc)), halphen2_e_basis<R>());
    CHECK(alg == halphen2_algebra_table(abc));
    // e_1 e_2 = -e_3 - 4c e
    CHECK(multiply(alg, V{1, 0, 0}, V{0, 1, 0}) == V{-4 * abc.c, -4 * abc.c, -1 - 4 * abc.c});
    const auto unit = find_unit(alg);
    REQUIRE(unit.has_value());
    CHECK(*unit == V{1, 1, 1});
  }
}

TEST_CASE("Halphen II at a=b=c=-1/8 in E-coordinates is Halphen I") {
  const auto h2 = halphen2_from_abc<R>({frac(-1, 8), frac(-1, 8), frac(-1, 8)});
  const LinearMap<R> e = halphen2_e_basis<R>();
  // Variables dual to the e-basis: Y = P^-T X.
  const LinearMap<R> to_e(inverse(e.matrix().transpose()));
  CHECK(change_vars(h2, to_e) == halphen1());
  CHECK(system_to_algebra(halphen1()) == halphen2_algebra_table<R>({frac(-1, 8), frac(-1, 8), frac(-1, 8)}));
}

TEST_CASE("Halphen I is stored solved for the derivatives") {
  const auto h1 = halphen1();
  // dX1/dt = X1X2 + X1X3 - X2X3
  const auto f = h1.component(0);
  CHECK(f(0, 1) == frac(1, 2));
  CHECK(f(0, 2) == frac(1, 2));
  CHECK(f(1, 2) == frac(-1, 2));
  CHECK(f(0, 0) == 0);
  const V x{2, 3, 5};
  const V d = evaluate_field(h1, x);
  CHECK(d[1] + d[2] == 2 * x[1] * x[2]);
  CHECK(d[0] + d[2] == 2 * x[0] * x[2]);
  CHECK(d[0] + d[1] == 2 * x[0] * x[1]);
}

TEST_CASE("find_unit") {
  CHECK_FALSE(find_unit(system_to_algebra(euler_top())).has_value());
  Tensor3<R> t(1);
  t(0, 0, 0) = 1;
  CHECK(find_unit(Algebra<R>(t)) == V{1});
  const auto riccati_alg = system_to_algebra(riccati(Matrix<R>::identity(2)));
  CHECK(find_unit(riccati_alg) == V{1, 0, 1});
}

TEST_CASE("unit is covariant under basis change") {
  std::mt19937_64 rng(5);
  const auto alg = halphen2_algebra_table<R>({1, 2, 3});
  const V e{1, 1, 1};
  for (int t = 0; t < 10; ++t) {
    const auto m = test::random_invertible(rng, 3);
    if (!m) continue;
    const LinearMap<R> map(*m);
    // Coordinates transform by the inverse transpose of the basis matrix.
    const V expected = inverse(m->transpose()) * e;
    CHECK(find_unit(change_basis(alg, map)) == expected);
  }
}

TEST_CASE("derivations and rank-3 classification") {
  CHECK(derivation_dimension(system_to_algebra(euler_top())) == 0);
  const auto riccati_alg = system_to_algebra(riccati(Matrix<R>::identity(2)));
  CHECK(derivation_dimension(riccati_alg) >= 1);
  CHECK(classify_rank3(riccati_alg) == Rank3Class::ElementaryType);
  CHECK(classify_rank3(system_to_algebra(euler_top())) == Rank3Class::NoUnit);
  CHECK(classify_rank3(system_to_algebra(halphen2({1, 2, 3}))) == Rank3Class::HypergeometricType);
  CHECK_THROWS_AS(classify_rank3(zero_algebra(4)), InvalidInput);

  std::mt19937_64 rng(17);
  for (const auto& alg : {riccati_alg, system_to_algebra(halphen2({1, 2, 3})), system_to_algebra(euler_top())}) {
    const std::size_t dim = derivation_dimension(alg);
    const Rank3Class cls = classify_rank3(alg);
    int done = 0;
    while (done < 20) {
      const auto m = test::random_invertible(rng, 3);
      if (!m) continue;
      const auto moved = change_basis(alg, LinearMap<R>(*m));
      CHECK(derivation_dimension(moved) == dim);
      CHECK(classify_rank3(moved) == cls);
      ++done;
    }
  }
}

TEST_CASE("Riccati system XAX") {
  const auto sys = riccati(Matrix<R>::identity(2));
  const V x{2, 3, 5};  // X11, X12, X22
  CHECK(evaluate_field(sys, x) == V{4 + 9, 3 * (2 + 5), 9 + 25});
  CHECK(is_zero(riccati(Matrix<R>(2, 2)).tensor()(0, 0, 0)));
  CHECK_THROWS_AS(riccati(Matrix<R>::from_rows({{1, 2}, {3, 4}})), InvalidInput);
  // General A against a direct matrix product.
  const Matrix<R> a = Matrix<R>::from_rows({{2, frac(1, 3)}, {frac(1, 3), -1}});
  const Matrix<R> xm = Matrix<R>::from_rows({{x[0], x[1]}, {x[1], x[2]}});
  const Matrix<R> xax = xm * a * xm;
  CHECK(evaluate_field(riccati(a), x) == V{xax(0, 0), xax(0, 1), xax(1, 1)});
}

TEST_CASE("evaluate_field is homogeneous of degree two") {
  std::mt19937_64 rng(23);
  const auto sys = QuadraticSystem<R>(test::random_symmetric_tensor(rng, 4));
  const V x = test::random_vector(rng, 4);
  const R lambda = frac(-3, 7);
  V lx = x;
  for (auto& v : lx) v *= lambda;
  V expected = evaluate_field(sys, x);
  for (auto& v : expected) v *= lambda * lambda;
  CHECK(evaluate_field(sys, lx) == expected);
  CHECK_THROWS_AS(evaluate_field(sys, V{1, 2}), DimensionMismatch);
}

TEST_CASE("Halphen II right-hand side at (1,0,0)") {
  const auto sys = halphen2_from_abc<R>({frac(-1, 8), frac(-1, 8), frac(-1, 8)});
  // X' = 1 + c + b, Y' = c + b, Z' = c + b
  CHECK(evaluate_field(sys, V{1, 0, 0}) == V{frac(3, 4), frac(-1, 4), frac(-1, 4)});
}

TEST_CASE("homogenize") {
  const auto lv = lotka_volterra(2, 3, 5, 7);
  // dN1 = 2 N1 N3 - 3 N1 N2, dN2 = -5 N1 N3 - 7 N1 N2, dN3 = 0
  const V n{frac(1, 2), frac(2, 3), 1};
  CHECK(evaluate_field(lv, n) == V{2 * n[0] - 3 * n[0] * n[1], -5 * n[0] - 7 * n[0] * n[1], 0});
  const V n2{frac(1, 2), frac(2, 3), 3};
  CHECK(evaluate_field(lv, n2)[2] == 0);

  // Homogeneous input gains an inert dummy.
  const auto euler = euler_top();
  const auto padded = homogenize(euler.tensor(), Matrix<R>(3, 3), V(3, R(0)));
  CHECK(padded.dim() == 4);
  CHECK(evaluate_field(padded, V{1, 2, 3, 7}) == V{12, 6, 4, 0});

  // Scalar Riccati x' = 1 + x^2.
  Tensor3<R> quad(1);
  quad(0, 0, 0) = 1;
  const auto ric = homogenize(quad, Matrix<R>(1, 1), V{1});
  CHECK(evaluate_field(ric, V{2, 1}) == V{5, 0});
  CHECK(evaluate_field(ric, V{2, 3}) == V{13, 0});
  CHECK_THROWS_AS(homogenize(quad, Matrix<R>(2, 2), V{1}), DimensionMismatch);
}

TEST_CASE("cofactors") {
  QuadricForm<R> q(3);
  q.add_monomial(0, 0, 1);
  q.add_monomial(1, 1, -1);
  const auto l = find_cofactor(euler_top(), q);
  REQUIRE(l.has_value());
  CHECK(is_zero(l->coeffs));

  const Level3 l3 = level3_system();
  const auto l3c = find_cofactor(l3.system, l3.quadric);
  REQUIRE(l3c.has_value());
  CHECK_FALSE(is_zero(l3c->coeffs));
  CHECK(l3c->coeffs == Vector<Eisenstein>(4, Eisenstein(1)));

  std::mt19937_64 rng(31);
  const auto sys = QuadraticSystem<R>(test::random_symmetric_tensor(rng, 4));
  QuadricForm<R> rq(4);
  for (std::size_t j = 0; j < 4; ++j)
    for (std::size_t k = j; k < 4; ++k) rq.add_monomial(j, k, test::random_rational(rng));
  CHECK_FALSE(find_cofactor(sys, rq).has_value());

  CHECK(find_cofactor(sys, QuadricForm<R>(4)).has_value());
}
