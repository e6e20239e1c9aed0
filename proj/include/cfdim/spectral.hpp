#pragma once

#include <utility>
#include <vector>

#include "cfdim/transfer.hpp"

namespace cfdim {

struct Eigentriple {
  double lambda = 0.0;
  GridFunction g;
  Eigen::VectorXd mu;  // node weights: mu f = sum_i mu_i f(x_i)
  double residual_right = 0.0;  // ||Lg - lambda g||_inf / (lambda ||g||_inf)
  double residual_left = 0.0;   // ||mu L - lambda mu||_1 / (lambda ||mu||_1)

  double measure(const GridFunction& f) const { return mu.dot(f.values()); }
};

// Normalized with g(0) = 1 and sum(mu) = 1.
Eigentriple dominant_eigentriple(const DiscretizedOperator& op, double tol = 1e-10);

double dominant_eigenvalue(const Eigen::MatrixXd& A);

// log of the dominant eigenvalue; +infinity at or below the abscissa,
// -infinity for the empty alphabet.
double pressure(const Alphabet& alphabet, double s, const GridPtr& grid, int p = 8);
double pressure(const Alphabet& alphabet, double s, int m, int p = 8);

double convergence_abscissa(const Alphabet& alphabet);

// |lambda_2| / |lambda_1| of the matrix.
double spectral_gap(const DiscretizedOperator& op);

// -mu alpha_1 g at s = delta.
double lyapunov(const Alphabet& alphabet, double delta, const Eigentriple& triple, int p = 8);

struct PressureCurve {
  std::string alphabet;
  std::vector<std::pair<double, double>> samples;
  double abscissa;

  bool strictly_decreasing() const;
  // Midpoint convexity on consecutive equally spaced triples, within tol.
  bool midpoint_convex(double tol = 1e-10) const;
};

PressureCurve pressure_curve(const Alphabet& alphabet, const std::vector<double>& s_values, int m,
                             int p = 8);

// max |(L g)(y) - lambda g(y)| over points between the nodes, using the
// exact operator applied to the interpolant of g.
double collocation_residual(const Alphabet& alphabet, double s, const Eigentriple& triple,
                            int p = 8);

}  // namespace cfdim
