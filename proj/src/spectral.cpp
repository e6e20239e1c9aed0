#include "cfdim/spectral.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>

#include "cfdim/errors.hpp"

namespace cfdim {

namespace {

constexpr int kDenseLimit = 128;

std::complex<double> dominant_of(const Eigen::VectorXcd& ev) {
  std::complex<double> best = ev[0];
  for (Eigen::Index i = 1; i < ev.size(); ++i) {
    const double a = std::abs(ev[i]), b = std::abs(best);
    if (a > b * (1 + 1e-12) || (a >= b * (1 - 1e-12) && ev[i].real() > best.real())) best = ev[i];
  }
  return best;
}

// A few steps of shifted inverse iteration polish an eigenvector.
Eigen::VectorXd inverse_iterate(const Eigen::MatrixXd& A, double lambda, Eigen::VectorXd v) {
  const int m = static_cast<int>(A.rows());
  const double shift = lambda * (1.0 + 1e-12) + 1e-300;
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(A - shift * Eigen::MatrixXd::Identity(m, m));
  for (int it = 0; it < 3; ++it) {
    v = lu.solve(v);
    v /= v.cwiseAbs().maxCoeff();
  }
  return v;
}

std::pair<double, Eigen::VectorXd> power_iteration(const Eigen::MatrixXd& A) {
  const int m = static_cast<int>(A.rows());
  Eigen::VectorXd v = Eigen::VectorXd::Ones(m);
  double lambda = 0.0;
  for (int it = 0; it < 5000; ++it) {
    Eigen::VectorXd w = A * v;
    const double nl = w.cwiseAbs().maxCoeff();
    if (nl == 0.0) return {0.0, v};
    w /= nl;
    const double change = (w - v).cwiseAbs().maxCoeff();
    v = w;
    if (std::abs(nl - lambda) <= 1e-15 * nl && change < 1e-14) {
      lambda = nl;
      break;
    }
    lambda = nl;
  }
  // Rayleigh-type estimate with the max-norm normalization.
  Eigen::Index k;
  v.cwiseAbs().maxCoeff(&k);
  lambda = (A * v)[k] / v[k];
  return {lambda, v};
}

}  // namespace

double dominant_eigenvalue(const Eigen::MatrixXd& A) {
  if (A.rows() <= kDenseLimit) {
    Eigen::EigenSolver<Eigen::MatrixXd> es(A, false);
    if (es.info() != Eigen::Success) throw NumericalError("eigenvalue solver did not converge");
    auto d = dominant_of(es.eigenvalues());
    if (std::abs(d.imag()) > 1e-8 * std::abs(d))
      throw NumericalError("dominant eigenvalue is not real");
    return d.real();
  }
  return power_iteration(A).first;
}

Eigentriple dominant_eigentriple(const DiscretizedOperator& op, double tol) {
  const Eigen::MatrixXd& A = op.matrix;
  const int m = static_cast<int>(A.rows());
  double lambda;
  Eigen::VectorXd g, mu;
  if (m <= kDenseLimit) {
    Eigen::EigenSolver<Eigen::MatrixXd> es(A, true);
    if (es.info() != Eigen::Success) throw NumericalError("eigenvalue solver did not converge");
    const auto& ev = es.eigenvalues();
    auto d = dominant_of(ev);
    if (std::abs(d.imag()) > 1e-8 * std::abs(d))
      throw NumericalError("dominant eigenvalue is a complex pair");
    Eigen::Index idx = 0;
    for (Eigen::Index i = 0; i < ev.size(); ++i)
      if (ev[i] == d) idx = i;
    lambda = d.real();
    g = es.eigenvectors().col(idx).real();
    mu = Eigen::VectorXd::Ones(m);
  } else {
    auto pr = power_iteration(A);
    lambda = pr.first;
    g = pr.second;
    mu = power_iteration(A.transpose()).second;
  }
  if (!(lambda > 0.0)) throw NumericalError("dominant eigenvalue is not positive");
  g = inverse_iterate(A, lambda, g);
  mu = inverse_iterate(A.transpose(), lambda, mu);
  if (g[0] < 0) g = -g;
  if (std::abs(g[0]) < 1e-300) throw NumericalError("eigenfunction vanishes at x = 0");
  g /= g[0];
  if (mu.sum() < 0) mu = -mu;
  mu /= mu.sum();
  // Rayleigh quotient with the left vector.
  lambda = mu.dot(A * g) / mu.dot(g);

  Eigentriple t{lambda, GridFunction(op.grid, g), mu, 0.0, 0.0};
  t.residual_right = (A * g - lambda * g).cwiseAbs().maxCoeff() / (lambda * g.cwiseAbs().maxCoeff());
  t.residual_left =
      (A.transpose() * mu - lambda * mu).cwiseAbs().sum() / (lambda * mu.cwiseAbs().sum());
  if (t.residual_right > tol || t.residual_left > tol)
    throw NumericalError("eigentriple residual above tolerance");
  return t;
}

double convergence_abscissa(const Alphabet& alphabet) { return alphabet.convergence_abscissa(); }

double pressure(const Alphabet& alphabet, double s, const GridPtr& grid, int p) {
  if (alphabet.is_empty()) return -std::numeric_limits<double>::infinity();
  if (!alphabet.is_finite() && !(s > alphabet.convergence_abscissa()))
    return std::numeric_limits<double>::infinity();
  const double lambda = dominant_eigenvalue(assemble(alphabet, s, grid, p).matrix);
  if (!(lambda > 0.0)) throw NumericalError("pressure: non-positive spectral radius");
  return std::log(lambda);
}

double pressure(const Alphabet& alphabet, double s, int m, int p) {
  return pressure(alphabet, s, make_grid(m), p);
}

double spectral_gap(const DiscretizedOperator& op) {
  Eigen::EigenSolver<Eigen::MatrixXd> es(op.matrix, false);
  if (es.info() != Eigen::Success) throw NumericalError("eigenvalue solver did not converge");
  std::vector<double> mods;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) mods.push_back(std::abs(es.eigenvalues()[i]));
  std::sort(mods.rbegin(), mods.rend());
  if (mods.empty() || mods[0] == 0.0) return 0.0;
  return mods.size() > 1 ? mods[1] / mods[0] : 0.0;
}

double lyapunov(const Alphabet& alphabet, double delta, const Eigentriple& triple, int p) {
  auto a1 = alpha_op(alphabet, delta, 1, triple.g.grid(), p);
  return -triple.measure(apply(a1, triple.g));
}

bool PressureCurve::strictly_decreasing() const {
  for (std::size_t i = 1; i < samples.size(); ++i)
    if (!(samples[i].second < samples[i - 1].second)) return false;
  return true;
}

bool PressureCurve::midpoint_convex(double tol) const {
  for (std::size_t i = 1; i + 1 < samples.size(); ++i) {
    const double h1 = samples[i].first - samples[i - 1].first;
    const double h2 = samples[i + 1].first - samples[i].first;
    if (std::abs(h1 - h2) > 1e-12 * std::max(1.0, std::abs(h1))) continue;
    if (samples[i].second > 0.5 * (samples[i - 1].second + samples[i + 1].second) + tol) return false;
  }
  return true;
}

PressureCurve pressure_curve(const Alphabet& alphabet, const std::vector<double>& s_values, int m,
                             int p) {
  PressureCurve c{alphabet.text(), {}, alphabet.convergence_abscissa()};
  auto grid = make_grid(m);
  for (double s : s_values) c.samples.emplace_back(s, pressure(alphabet, s, grid, p));
  return c;
}

double collocation_residual(const Alphabet& alphabet, double s, const Eigentriple& triple, int p) {
  const auto& grid = *triple.g.grid();
  std::vector<double> pts;
  for (int i = 0; i + 1 < grid.size(); ++i) pts.push_back(0.5 * (grid.node(i) + grid.node(i + 1)));
  Eigen::MatrixXd rows = operator_rows(alphabet, s, triple.g.grid(), pts, p);
  Eigen::VectorXd lg = rows * triple.g.values();
  double r = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i)
    r = std::max(r, std::abs(lg[static_cast<Eigen::Index>(i)] - triple.lambda * triple.g(pts[i])));
  return r;
}

}  // namespace cfdim
