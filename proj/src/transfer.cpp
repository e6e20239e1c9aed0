#include "cfdim/transfer.hpp"

#include <cmath>
#include <limits>

#include "cfdim/errors.hpp"
#include "cfdim/jet.hpp"
#include "cfdim/series.hpp"
#include "cfdim/tail_sums.hpp"

namespace cfdim {

namespace {

void check_summable(const Alphabet& alphabet, double s, int p, const Enumeration& en) {
  if (!alphabet.is_finite() && !(s > alphabet.convergence_abscissa()))
    throw DivergentSumError("transfer operator: s = " + std::to_string(s) +
                            " is not above the convergence abscissa of " + alphabet.text());
  for (const auto& t : en.tails)
    if (t.decay == TailDescriptor::Decay::polynomial && p < 2)
      throw DomainError("transfer operator: tail order must be at least 2 for polynomial tails");
}

// Per-row Taylor-tail coefficients: out[j][k] = K^k * sum_tail (s_n + x)^{-(2s+k)} (-2 log(s_n+x))^j / j!
std::vector<Eigen::VectorXd> tail_moments(const TailDescriptor& t, double s, double x, int jmax,
                                          const ChebyshevGrid& grid, int p) {
  const int m = grid.size();
  const Eigen::MatrixXd& D = grid.scaled_taylor();
  const double K = 1.0 / grid.taylor_scale();
  std::vector<Eigen::VectorXd> out(static_cast<std::size_t>(jmax + 1), Eigen::VectorXd::Zero(m));
  double lead = 0.0;
  int quiet = 0;
  for (int k = 0; k < m; ++k) {
    const double dmax = D.row(k).cwiseAbs().maxCoeff();
    // Coarser tolerance where the Taylor row is tiny: its product is what matters.
    const double tol = std::clamp(1e-17 / std::max(dmax, 1e-300), 1e-17, 1e-4);
    const double scale = std::pow(K, k);
    const double sig0 = 2.0 * s + k;
    if (jmax == 0) {
      out[0][k] = tail_power_sum(t, sig0, x, p, tol) * scale;
    } else {
      Jet sig(sig0, jmax);
      sig[1] = 2.0;  // sigma = 2(s + theta) + k
      Jet h = tail_power_sum(t, sig, x, p, tol);
      for (int j = 0; j <= jmax; ++j) out[j][k] = h[j] * scale;
    }
    const double contrib = std::abs(out[0][k]) * dmax;
    if (k == 0) lead = std::abs(out[0][0]);
    if (contrib < 1e-20 * lead) {
      if (++quiet >= 4) break;
    } else {
      quiet = 0;
    }
  }
  return out;
}

// rows[j](i, :) is the functional f -> (alpha_j f)(points[i]) on Lagrange coefficients.
std::vector<Eigen::MatrixXd> weighted_rows(const Alphabet& alphabet, double s,
                                           const ChebyshevGrid& grid,
                                           const std::vector<double>& points, int jmax, int p) {
  const int m = grid.size();
  const int np = static_cast<int>(points.size());
  std::vector<Eigen::MatrixXd> rows(static_cast<std::size_t>(jmax + 1), Eigen::MatrixXd::Zero(np, m));
  if (alphabet.is_empty()) return rows;
  const Enumeration en = alphabet.split(grid.min_tail_value());
  check_summable(alphabet, s, p, en);
  const Eigen::VectorXd& xn = grid.nodes();
  const Eigen::VectorXd& wb = grid.weights();
  Eigen::VectorXd lag(m);
  std::vector<double> coef(static_cast<std::size_t>(jmax + 1));
  for (int i = 0; i < np; ++i) {
    const double x = points[static_cast<std::size_t>(i)];
    // Smallest terms first.
    for (auto it = en.explicit_elements.rbegin(); it != en.explicit_elements.rend(); ++it) {
      const double q = static_cast<double>(*it) + x;
      const double y = 1.0 / q;
      const double lq = std::log(q);
      const double w = std::exp(-2.0 * s * lq);
      coef[0] = w;
      for (int j = 1; j <= jmax; ++j) coef[j] = coef[j - 1] * (-2.0 * lq) / j;
      int hit = -1;
      double sum = 0.0;
      for (int k = 0; k < m; ++k) {
        if (y == xn[k]) {
          hit = k;
          break;
        }
        lag[k] = wb[k] / (y - xn[k]);
        sum += lag[k];
      }
      if (hit >= 0) {
        for (int j = 0; j <= jmax; ++j) rows[j](i, hit) += coef[j];
        continue;
      }
      lag /= sum;
      for (int j = 0; j <= jmax; ++j) rows[j].row(i) += coef[j] * lag.transpose();
    }
    for (const auto& t : en.tails) {
      auto mom = tail_moments(t, s, x, jmax, grid, p);
      for (int j = 0; j <= jmax; ++j)
        rows[j].row(i) += mom[j].transpose() * grid.scaled_taylor();
    }
  }
  return rows;
}

std::vector<double> node_list(const ChebyshevGrid& grid) {
  return std::vector<double>(grid.nodes().data(), grid.nodes().data() + grid.size());
}

}  // namespace

DiscretizedOperator assemble(const Alphabet& alphabet, double s, const GridPtr& grid, int p) {
  auto rows = weighted_rows(alphabet, s, *grid, node_list(*grid), 0, p);
  return {grid, std::move(rows[0]), {alphabet.text(), s, p, 0}};
}

std::vector<DiscretizedOperator> alpha_ops(const Alphabet& alphabet, double delta, int jmax,
                                           const GridPtr& grid, int p) {
  if (jmax < 0 || jmax > Jet::kMaxOrder) throw DomainError("alpha_op: j out of range");
  auto rows = weighted_rows(alphabet, delta, *grid, node_list(*grid), jmax, p);
  std::vector<DiscretizedOperator> out;
  for (int j = 0; j <= jmax; ++j)
    out.push_back({grid, std::move(rows[j]), {alphabet.text(), delta, p, j}});
  return out;
}

DiscretizedOperator alpha_op(const Alphabet& alphabet, double delta, int j, const GridPtr& grid,
                             int p) {
  auto all = alpha_ops(alphabet, delta, j, grid, p);
  return std::move(all.back());
}

Eigen::MatrixXd operator_rows(const Alphabet& alphabet, double s, const GridPtr& grid,
                              const std::vector<double>& points, int p) {
  return std::move(weighted_rows(alphabet, s, *grid, points, 0, p)[0]);
}

GridFunction apply(const DiscretizedOperator& op, const GridFunction& f) {
  require_same_grid(*op.grid, *f.grid());
  return GridFunction(f.grid(), op.matrix * f.values());
}

double PhiProduct::at(int i) const {
  if (i == 0 && j_ > 0) throw DomainError("phi^j f has no value at x = 0; use L M_phi^j compositions");
  return v_[i];
}

PhiProduct multiply_phi(const GridFunction& f, int j) {
  if (j < 0) throw DomainError("multiply_phi: negative power");
  const auto& g = *f.grid();
  Eigen::VectorXd v(g.size());
  v[0] = j == 0 ? f[0] : std::numeric_limits<double>::quiet_NaN();
  for (int i = 1; i < g.size(); ++i) v[i] = std::pow(2.0 * std::log(g.node(i)), j) * f[i];
  return PhiProduct(f.grid(), std::move(v), j);
}

GridFunction apply_L_phi(const Alphabet& alphabet, double delta, int j, const GridFunction& f,
                         int p) {
  if (j < 0 || j > Jet::kMaxOrder) throw DomainError("apply_L_phi: j out of range");
  const auto& grid = *f.grid();
  const int m = grid.size();
  Eigen::VectorXd out = Eigen::VectorXd::Zero(m);
  if (alphabet.is_empty()) return GridFunction(f.grid(), out);
  const Enumeration en = alphabet.split(grid.min_tail_value());
  check_summable(alphabet, delta, p, en);
  // Scaled Taylor coefficients of f at 0 for the tail part.
  const Eigen::VectorXd ft = grid.scaled_taylor() * f.values();
  double jfact = 1.0;
  for (int r = 2; r <= j; ++r) jfact *= r;
  for (int i = 0; i < m; ++i) {
    const double x = grid.node(i);
    double acc = 0.0;
    for (auto it = en.explicit_elements.rbegin(); it != en.explicit_elements.rend(); ++it) {
      const double q = static_cast<double>(*it) + x;
      const double y = 1.0 / q;
      acc += std::pow(q, -2.0 * delta) * std::pow(2.0 * std::log(y), j) * f(y);
    }
    for (const auto& t : en.tails) {
      auto mom = tail_moments(t, delta, x, j, grid, p);
      acc += jfact * mom[j].dot(ft);
    }
    out[i] = acc;
  }
  return GridFunction(f.grid(), out);
}

std::vector<std::vector<GridFunction>> beta_taylor(double delta, int i_max, int j_max,
                                                   const GridFunction& f) {
  if (i_max < 0 || j_max < 0 || i_max > 8 || j_max > 8)
    throw DomainError("beta_taylor: truncation orders must lie in [0, 8]");
  const auto& grid = *f.grid();
  const int m = grid.size();
  const std::vector<std::string> vars{"b", "theta"};
  const std::vector<int> deg{i_max, j_max};
  const auto fk = f.taylor_at_zero(i_max);
  const FloatSeries B = FloatSeries::variable(vars, deg, 0);
  const FloatSeries T = FloatSeries::variable(vars, deg, 1);
  std::vector<std::vector<Eigen::VectorXd>> vals(
      static_cast<std::size_t>(i_max + 1),
      std::vector<Eigen::VectorXd>(static_cast<std::size_t>(j_max + 1), Eigen::VectorXd(m)));
  for (int n = 0; n < m; ++n) {
    const double x = grid.node(n);
    const FloatSeries onepbx = B * x + 1.0;
    const FloatSeries v = log(onepbx) * -2.0;
    const FloatSeries E = exp((T + delta) * v);
    const FloatSeries U = B * onepbx.reciprocal();
    FloatSeries F = FloatSeries::constant(vars, deg, fk[0]);
    FloatSeries Uk = FloatSeries::constant(vars, deg, 1.0);
    for (int k = 1; k <= i_max; ++k) {
      Uk = Uk * U;
      F += Uk * fk[static_cast<std::size_t>(k)];
    }
    const FloatSeries R = E * F;
    for (int i = 0; i <= i_max; ++i)
      for (int j = 0; j <= j_max; ++j) vals[i][j][n] = R.coeff({i, j});
  }
  std::vector<std::vector<GridFunction>> out;
  for (int i = 0; i <= i_max; ++i) {
    out.emplace_back();
    for (int j = 0; j <= j_max; ++j) out.back().emplace_back(f.grid(), vals[i][j]);
  }
  return out;
}

}  // namespace cfdim
