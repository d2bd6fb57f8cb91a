#include "dhb/corpus.hpp"

#include <utility>

namespace dhb {

namespace {

using RForm = QuadricForm<Rational>;

RForm monomials(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& terms, const Rational& coef) {
  RForm f(n);
  for (const auto& [j, k] : terms) f.add_monomial(j, k, coef);
  return f;
}

}  // namespace

QuadraticSystem<Rational> euler_top() {
  return QuadraticSystem<Rational>::from_forms(
      {monomials(3, {{1, 2}}, 2), monomials(3, {{0, 2}}, 2), monomials(3, {{0, 1}}, 2)});
}

QuadraticSystem<Rational> lotka_volterra(const Rational& a, const Rational& b, const Rational& c,
                                         const Rational& d) {
  Tensor3<Rational> quad(2);
  quad.set_symmetric(0, 0, 1, Rational(-b / 2));
  quad.set_symmetric(1, 0, 1, Rational(-d / 2));
  Matrix<Rational> lin(2, 2);
  lin(0, 0) = a;
  lin(1, 0) = -c;
  return homogenize(quad, lin, Vector<Rational>(2, Rational(0)));
}

QuadraticSystem<Rational> halphen1() {
  // X2'+X3' = 2 X2 X3,  X1'+X3' = 2 X1 X3,  X1'+X2' = 2 X1 X2
  const Matrix<Rational> lhs = Matrix<Rational>::from_rows({{0, 1, 1}, {1, 0, 1}, {1, 1, 0}});
  return solve_for_derivatives(lhs, {monomials(3, {{1, 2}}, 2), monomials(3, {{0, 2}}, 2),
                                     monomials(3, {{0, 1}}, 2)});
}

QuadraticSystem<Rational> halphen2(const HalphenABC<Rational>& abc) { return halphen2_from_abc(abc); }

QuadraticSystem<Rational> chazy_k0_system() {
  // Variables (X, W, V).
  const Vector<Rational> x{1, 0, 0}, w{0, 1, 0}, v{0, 0, 1};
  const auto minus = [](const Vector<Rational>& p, const Vector<Rational>& q) {
    return Vector<Rational>{p[0] - q[0], p[1] - q[1], p[2] - q[2]};
  };
  RForm shared(3);  // (V-X)(W-X)
  shared.add_product(minus(v, x), minus(w, x), 1);
  RForm fx = shared, fw = shared, fv = shared;
  fx.add_product(x, x, 1);
  fw.add_product(w, w, 1);
  fw.add_product(minus(x, w), minus(x, w), -1);
  fv.add_product(v, v, 1);
  fv.add_product(minus(w, x), minus(w, x), 1);
  fv.add_product(minus(x, v), minus(x, v), -1);
  return QuadraticSystem<Rational>::from_forms({fx, fw, fv});
}

Level3 level3_system() {
  using E = Eisenstein;
  using EForm = QuadricForm<E>;
  enum : std::size_t { W = 0, X = 1, Y = 2, Z = 3 };
  const auto sum3 = [](std::size_t a, std::size_t b, std::size_t c) {
    EForm f(4);
    f.add_monomial(a, b, E(1));
    f.add_monomial(b, c, E(1));
    f.add_monomial(c, a, E(1));
    return f;
  };
  // W'+X'+Y' = WX+XY+YW,  W'+Y'+Z' = WY+YZ+ZW,  W'+X'+Z' = WX+XZ+ZW,  X'+Y'+Z' = XY+YZ+ZX
  const Matrix<E> lhs = Matrix<E>::from_rows({{1, 1, 1, 0}, {1, 0, 1, 1}, {1, 1, 0, 1}, {0, 1, 1, 1}});
  QuadraticSystem<E> sys = solve_for_derivatives(lhs, {sum3(W, X, Y), sum3(W, Y, Z), sum3(W, X, Z), sum3(X, Y, Z)});

  const E w = E::omega();
  EForm q(4);  // w^2 (XZ+YW) + w (XW+YZ) + (XY+ZW)
  q.add_monomial(X, Z, w * w);
  q.add_monomial(Y, W, w * w);
  q.add_monomial(X, W, w);
  q.add_monomial(Y, Z, w);
  q.add_monomial(X, Y, E(1));
  q.add_monomial(Z, W, E(1));
  return {std::move(sys), std::move(q)};
}

SecondOrderCoefficients level3_picard_fuchs() {
  using E = Eisenstein;
  using P = Polynomial<E>;
  const P lead(std::vector<E>{1, 0, 0, -1});  // 1 - t^3
  const P p_num(std::vector<E>{0, 0, -3});    // -3 t^2
  const P q_num(std::vector<E>{0, -1});       // -t
  return {RationalFunction<E>(p_num, lead), RationalFunction<E>(q_num, lead)};
}

FuchsianData<Eisenstein> level3_fuchsian() {
  const SecondOrderCoefficients pf = level3_picard_fuchs();
  const Eisenstein w = Eisenstein::omega();
  return fuchsian_from_q(normal_form_reduce(pf.p, pf.q), {Eisenstein(1), w, w * w});
}

QuadraticSystem<Rational> riccati(const Matrix<Rational>& a) { return riccati_system(a); }

}  // namespace dhb
