#pragma once

#include <string>
#include <vector>

#include "cfdim/alphabet.hpp"
#include "cfdim/chebyshev.hpp"

namespace cfdim {

struct OperatorMeta {
  std::string alphabet;
  double s = 0.0;
  int tail_order = 8;
  int weight_log_power = 0;  // j for alpha_j
};

struct DiscretizedOperator {
  GridPtr grid;
  Eigen::MatrixXd matrix;
  OperatorMeta meta;

  int size() const { return static_cast<int>(matrix.rows()); }
};

// (L f)(x_i) = sum_{n in E} (n + x_i)^{-2s} f(1/(n + x_i)) on the grid.
DiscretizedOperator assemble(const Alphabet& alphabet, double s, const GridPtr& grid, int p = 8);

// alpha_j with weights (n+x)^{-2 delta} (-2 log(n+x))^j / j!.
DiscretizedOperator alpha_op(const Alphabet& alphabet, double delta, int j, const GridPtr& grid,
                             int p = 8);
// alpha_0 .. alpha_jmax in one pass.
std::vector<DiscretizedOperator> alpha_ops(const Alphabet& alphabet, double delta, int jmax,
                                           const GridPtr& grid, int p = 8);

// Rows of the (j = 0) operator at arbitrary points of [0, 1].
Eigen::MatrixXd operator_rows(const Alphabet& alphabet, double s, const GridPtr& grid,
                              const std::vector<double>& points, int p = 8);

GridFunction apply(const DiscretizedOperator& op, const GridFunction& f);

// phi(x)^j f(x) with phi = 2 log x at the nodes.  The x = 0 node has no
// value; asking for it is an error.
class PhiProduct {
 public:
  PhiProduct(GridPtr grid, Eigen::VectorXd values, int j)
      : grid_(std::move(grid)), v_(std::move(values)), j_(j) {}
  double at(int i) const;
  int power() const { return j_; }
  const GridPtr& grid() const { return grid_; }

 private:
  GridPtr grid_;
  Eigen::VectorXd v_;
  int j_;
};

PhiProduct multiply_phi(const GridFunction& f, int j);

// L M_phi^j f, computed as sum_n (n+x)^{-2 delta} phi(1/(n+x))^j f(1/(n+x)).
GridFunction apply_L_phi(const Alphabet& alphabet, double delta, int j, const GridFunction& f,
                         int p = 8);

// table[i][j] = beta_{i,j} f = Coeff(b^i theta^j, e^{(delta+theta) v(b,x)} f(u_b(x)))
// with v(b,x) = -2 log(1+bx), u_b(x) = b/(1+bx).
std::vector<std::vector<GridFunction>> beta_taylor(double delta, int i_max, int j_max,
                                                   const GridFunction& f);

}  // namespace cfdim
