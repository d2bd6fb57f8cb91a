#include "dhb/line_search.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <random>

namespace dhb {

namespace {

using CVec = Eigen::VectorXcd;
using CMat = Eigen::MatrixXcd;

CVec base_square(const Tensor3<Complex>& a, const CVec& v) {
  const Eigen::Index n = v.size();
  CVec out = CVec::Zero(n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      for (Eigen::Index k = 0; k < n; ++k)
        out(i) += a(static_cast<std::size_t>(i), static_cast<std::size_t>(j), static_cast<std::size_t>(k)) * v(j) * v(k);
  return out;
}

Vector<Complex> normalized(const CVec& v) {
  Eigen::Index big = 0;
  v.cwiseAbs().maxCoeff(&big);
  const CVec w = v / v(big);
  return Vector<Complex>(w.data(), w.data() + w.size());
}

bool same_line(const Vector<Complex>& a, const Vector<Complex>& b, double tol) {
  double diff = 0;
  for (std::size_t i = 0; i < a.size(); ++i) diff = std::max(diff, std::abs(a[i] - b[i]));
  return diff < tol;
}

}  // namespace

std::vector<SquareLine> find_square_lines(const Tensor3<Complex>& base, const Matrix<Complex>& quadric,
                                          const Vector<Complex>& e, const LineSearchOptions& opts) {
  const Eigen::Index n = static_cast<Eigen::Index>(base.dim());
  CVec ev(n);
  for (Eigen::Index i = 0; i < n; ++i) ev(i) = e[static_cast<std::size_t>(i)];
  CMat bq(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) bq(i, j) = quadric(static_cast<std::size_t>(i), static_cast<std::size_t>(j));

  std::mt19937_64 rng(opts.seed);
  std::normal_distribution<double> gauss;
  const auto random_complex = [&] { return Complex(gauss(rng), gauss(rng)); };
  const Vector<Complex> e_line = normalized(ev);

  std::vector<SquareLine> lines;
  for (int attempt = 0; attempt < opts.restarts; ++attempt) {
    // Unknowns (v, lambda); equations base(v,v) - lambda e = 0 and nrm . v = 1.
    CVec nrm(n), v(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      nrm(i) = random_complex();
      v(i) = random_complex();
    }
    const Complex scale = (nrm.transpose() * v)(0);
    if (std::abs(scale) > 1e-12) v /= scale;
    Complex lambda = random_complex();
    bool converged = false;
    for (int it = 0; it < opts.newton_iterations; ++it) {
      CVec r(n + 1);
      r.head(n) = base_square(base, v) - lambda * ev;
      r(n) = (nrm.transpose() * v)(0) - Complex(1);
      if (r.norm() < opts.tolerance) {
        converged = true;
        break;
      }
      CMat jac = CMat::Zero(n + 1, n + 1);
      for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index k = 0; k < n; ++k) {
          Complex d(0);
          for (Eigen::Index j = 0; j < n; ++j)
            d += base(static_cast<std::size_t>(i), static_cast<std::size_t>(j), static_cast<std::size_t>(k)) * v(j);
          jac(i, k) = Complex(2) * d;
        }
        jac(i, n) = -ev(i);
      }
      jac.row(n).head(n) = nrm.transpose();
      const CVec step = jac.colPivHouseholderQr().solve(-r);
      if (!step.allFinite()) break;
      v += step.head(n);
      lambda += step(n);
      if (!v.allFinite() || v.norm() > 1e12) break;
    }
    if (!converged) continue;
    SquareLine line{normalized(v), Complex(0), Complex(0)};
    if (same_line(line.v, e_line, 1e-8)) continue;
    bool fresh = true;
    for (const auto& seen : lines) fresh = fresh && !same_line(seen.v, line.v, 1e-8);
    if (!fresh) continue;
    CVec w(n);
    for (Eigen::Index i = 0; i < n; ++i) w(i) = line.v[static_cast<std::size_t>(i)];
    const CVec sq = base_square(base, w);
    Eigen::Index big = 0;
    ev.cwiseAbs().maxCoeff(&big);
    line.lambda = sq(big) / ev(big);
    line.quadric = (w.transpose() * bq * w)(0);
    lines.push_back(std::move(line));
  }
  return lines;
}

std::vector<Matrix<Complex>> candidate_bases(const std::vector<SquareLine>& lines, const Vector<Complex>& e,
                                             double quadric_tolerance, std::size_t max_candidates) {
  const std::size_t n = e.size();
  std::vector<const SquareLine*> isotropic;
  for (const auto& line : lines)
    if (std::abs(line.quadric) <= quadric_tolerance) isotropic.push_back(&line);
  std::vector<std::pair<double, Matrix<Complex>>> found;
  if (isotropic.size() < n) return {};

  // Walk the n-subsets of the isotropic lines.
  std::vector<std::size_t> pick(n);
  for (std::size_t i = 0; i < n; ++i) pick[i] = i;
  const std::size_t total = isotropic.size();
  for (;;) {
    CMat lm(n, n);
    CVec rhs(n);
    for (std::size_t i = 0; i < n; ++i) {
      rhs(static_cast<Eigen::Index>(i)) = Complex(2) * e[i];
      for (std::size_t j = 0; j < n; ++j) lm(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = isotropic[pick[j]]->v[i];
    }
    Eigen::FullPivLU<CMat> lu(lm);
    if (lu.isInvertible()) {
      const CVec s = lu.solve(rhs);
      const double resid = (lm * s - rhs).norm();
      Matrix<Complex> basis(n, n);
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i)
          basis(j, i) = (e[i] - s(static_cast<Eigen::Index>(j)) * isotropic[pick[j]]->v[i]) / 2.0;
      found.emplace_back(resid, std::move(basis));
      if (found.size() >= max_candidates) break;
    }
    // Next combination.
    std::size_t i = n;
    while (i > 0 && pick[i - 1] == total - n + (i - 1)) --i;
    if (i == 0) break;
    ++pick[i - 1];
    for (std::size_t j = i; j < n; ++j) pick[j] = pick[j - 1] + 1;
  }
  std::stable_sort(found.begin(), found.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<Matrix<Complex>> out;
  for (auto& f : found) out.push_back(std::move(f.second));
  return out;
}

}  // namespace dhb
