#pragma once

#include <Eigen/Dense>
#include <functional>
#include <memory>
#include <vector>

namespace cfdim {

class ChebyshevGrid {
 public:
  explicit ChebyshevGrid(int m);

  int size() const { return m_; }
  const Eigen::VectorXd& nodes() const { return x_; }
  const Eigen::VectorXd& weights() const { return w_; }
  double node(int i) const { return x_[i]; }

  // Lagrange basis values l_j(y) for every j, y anywhere in the plane's real line.
  Eigen::VectorXd lagrange_row(double y) const;
  double interpolate(const Eigen::VectorXd& values, double y) const;

  // Chebyshev coefficients (in u = 2x - 1) of the interpolant through values.
  Eigen::VectorXd chebyshev_coefficients(const Eigen::VectorXd& values) const;

  // Row k, column j: k-th Taylor coefficient at x = 0 of l_j, multiplied by
  // taylor_scale()^k.  Rows k = 0..m-1.
  const Eigen::MatrixXd& scaled_taylor() const { return taylor_; }
  // Scale: images of tail maps lie in [0, taylor_scale()].
  double taylor_scale() const { return scale_; }
  // Smallest first image value 1/(n+x) a closed-form tail may start at.
  double min_tail_value() const { return 1.0 / scale_; }

 private:
  int m_;
  Eigen::VectorXd x_, w_;
  double scale_;
  Eigen::MatrixXd taylor_;
};

using GridPtr = std::shared_ptr<const ChebyshevGrid>;

GridPtr make_grid(int m);

class GridFunction {
 public:
  GridFunction(GridPtr grid, Eigen::VectorXd values);
  static GridFunction sample(GridPtr grid, const std::function<double(double)>& f);
  static GridFunction constant(GridPtr grid, double c);

  const GridPtr& grid() const { return grid_; }
  const Eigen::VectorXd& values() const { return v_; }
  Eigen::VectorXd& values() { return v_; }
  int size() const { return static_cast<int>(v_.size()); }
  double operator[](int i) const { return v_[i]; }

  // Barycentric interpolation; exact stored value at nodes.
  double operator()(double x) const;
  // Taylor coefficients f_0..f_kmax at x = 0 from the interpolant, with
  // negligible Chebyshev coefficients chopped first.
  std::vector<double> taylor_at_zero(int kmax) const;

  GridFunction& operator+=(const GridFunction& o);
  GridFunction& operator-=(const GridFunction& o);
  GridFunction& operator*=(double a);
  friend GridFunction operator+(GridFunction a, const GridFunction& b) { return a += b; }
  friend GridFunction operator-(GridFunction a, const GridFunction& b) { return a -= b; }
  friend GridFunction operator*(GridFunction a, double k) { return a *= k; }
  friend GridFunction operator*(double k, GridFunction a) { return a *= k; }

 private:
  GridPtr grid_;
  Eigen::VectorXd v_;
};

void require_same_grid(const ChebyshevGrid& a, const ChebyshevGrid& b);

}  // namespace cfdim
