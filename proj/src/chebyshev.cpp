#include "cfdim/chebyshev.hpp"

#include <cmath>

#include "cfdim/errors.hpp"

namespace cfdim {

namespace {

// coeffs[n] -> Taylor coefficient k at u = -1 (t = 0) of sum c_n T_n(2t - 1),
// times scale^k.  F(n,k) is built by a ratio recursion to avoid overflow.
Eigen::MatrixXd taylor_factors(int m, int kmax, double scale) {
  Eigen::MatrixXd F = Eigen::MatrixXd::Zero(m, kmax + 1);
  for (int n = 0; n < m; ++n) {
    double f = (n % 2) ? -1.0 : 1.0;
    F(n, 0) = f;
    for (int k = 0; k < kmax && k < n; ++k) {
      f *= -2.0 * scale * (static_cast<double>(n) * n - static_cast<double>(k) * k) /
           ((2.0 * k + 1.0) * (k + 1.0));
      F(n, k + 1) = f;
    }
  }
  return F;
}

}  // namespace

ChebyshevGrid::ChebyshevGrid(int m) : m_(m) {
  if (m < 8) throw DomainError("make_grid: need at least 8 nodes");
  x_.resize(m);
  w_.resize(m);
  const double h = M_PI / (2.0 * (m - 1));
  for (int k = 0; k < m; ++k) {
    const double s = std::sin(h * k);
    x_[k] = s * s;
    w_[k] = (k % 2) ? -1.0 : 1.0;
  }
  x_[0] = 0.0;
  x_[m - 1] = 1.0;
  w_[0] *= 0.5;
  w_[m - 1] *= 0.5;

  // The tail images 1/(n+x) stay below scale_; with scale_ <= 16/m^2 the
  // Taylor expansion of the interpolant converges with bounded amplification.
  scale_ = 1.0 / std::max(64.0, std::ceil(m * static_cast<double>(m) / 16.0));
  Eigen::MatrixXd C(m, m);
  for (int j = 0; j < m; ++j) {
    Eigen::VectorXd e = Eigen::VectorXd::Zero(m);
    e[j] = 1.0;
    C.col(j) = chebyshev_coefficients(e);
  }
  taylor_ = taylor_factors(m, m - 1, scale_).transpose() * C;
}

Eigen::VectorXd ChebyshevGrid::lagrange_row(double y) const {
  Eigen::VectorXd r(m_);
  for (int j = 0; j < m_; ++j) {
    if (y == x_[j]) {
      r.setZero();
      r[j] = 1.0;
      return r;
    }
    r[j] = w_[j] / (y - x_[j]);
  }
  return r / r.sum();
}

double ChebyshevGrid::interpolate(const Eigen::VectorXd& values, double y) const {
  double num = 0.0, den = 0.0;
  for (int j = 0; j < m_; ++j) {
    if (y == x_[j]) return values[j];
    const double t = w_[j] / (y - x_[j]);
    num += t * values[j];
    den += t;
  }
  return num / den;
}

Eigen::VectorXd ChebyshevGrid::chebyshev_coefficients(const Eigen::VectorXd& f) const {
  const int N = m_ - 1;
  Eigen::VectorXd c(m_);
  std::vector<double> table(static_cast<std::size_t>(2 * N));
  for (int r = 0; r < 2 * N; ++r) table[r] = std::cos(M_PI * r / N);
  for (int n = 0; n <= N; ++n) {
    double s = 0.0;
    for (int j = 0; j <= N; ++j) {
      double t = f[j] * table[static_cast<std::size_t>((static_cast<long>(n) * j) % (2 * N))];
      if (j == 0 || j == N) t *= 0.5;
      s += t;
    }
    s *= 2.0 / N;
    if (n % 2) s = -s;  // T_n(u_j) = (-1)^n cos(n pi j / N)
    if (n == 0 || n == N) s *= 0.5;
    c[n] = s;
  }
  return c;
}

GridPtr make_grid(int m) { return std::make_shared<const ChebyshevGrid>(m); }

GridFunction::GridFunction(GridPtr grid, Eigen::VectorXd values)
    : grid_(std::move(grid)), v_(std::move(values)) {
  if (!grid_) throw DomainError("GridFunction: null grid");
  if (v_.size() != grid_->size()) throw DomainError("GridFunction: value count does not match grid");
}

GridFunction GridFunction::sample(GridPtr grid, const std::function<double(double)>& f) {
  Eigen::VectorXd v(grid->size());
  for (int i = 0; i < grid->size(); ++i) v[i] = f(grid->node(i));
  return GridFunction(std::move(grid), std::move(v));
}

GridFunction GridFunction::constant(GridPtr grid, double c) {
  const int m = grid->size();
  return GridFunction(std::move(grid), Eigen::VectorXd::Constant(m, c));
}

double GridFunction::operator()(double x) const { return grid_->interpolate(v_, x); }

std::vector<double> GridFunction::taylor_at_zero(int kmax) const {
  Eigen::VectorXd c = grid_->chebyshev_coefficients(v_);
  const double big = c.cwiseAbs().maxCoeff();
  int last = 0;
  for (int n = 0; n < c.size(); ++n)
    if (std::abs(c[n]) > 1e-14 * big) last = n;
  Eigen::MatrixXd F = taylor_factors(last + 1, kmax, 1.0);
  std::vector<double> out(static_cast<std::size_t>(kmax + 1));
  for (int k = 0; k <= kmax; ++k) out[k] = F.col(k).dot(c.head(last + 1));
  return out;
}

GridFunction& GridFunction::operator+=(const GridFunction& o) {
  require_same_grid(*grid_, *o.grid_);
  v_ += o.v_;
  return *this;
}
GridFunction& GridFunction::operator-=(const GridFunction& o) {
  require_same_grid(*grid_, *o.grid_);
  v_ -= o.v_;
  return *this;
}
GridFunction& GridFunction::operator*=(double a) {
  v_ *= a;
  return *this;
}

void require_same_grid(const ChebyshevGrid& a, const ChebyshevGrid& b) {
  if (a.size() != b.size()) throw DomainError("grid mismatch");
}

}  // namespace cfdim
