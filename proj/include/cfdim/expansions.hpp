#pragma once

#include <functional>
#include <map>
#include <utility>
#include <vector>

#include "cfdim/dimension.hpp"
#include "cfdim/perturbation.hpp"
#include "cfdim/series.hpp"

namespace cfdim {

struct TreeCoefficients {
  std::vector<Rational> a;  // a_0 .. a_jmax
};

// a_j from F = exp(x F) solved on a truncated series; checked against
// (j+1)^{j-1}/j! and throws NumericalError on any mismatch.
TreeCoefficients tree_coefficients(int j_max);
Rational tree_closed_form(int j);
// W(x) = x F(x) is the compositional inverse of y = w e^{-w}.
std::vector<Rational> tree_coefficients_by_reversion(int j_max);

// -(2^{i-1} i^{i-2} / (i-1)!) (6/pi^2)^i
double c_ii1(int i);
// -(2^{i-1} / zeta(2)^i) a_{i-1}
double c_ii1_via_tree(int i);

struct HensleyExpansion {
  int order = 3;
  double c10 = 0.0, c21 = 0.0, c20 = 0.0;
  std::map<std::pair<int, int>, double> coefficients;  // (i, j) -> c_{i,j}

  // 1 + sum c_{i,j} log^j N / N^i
  double evaluate(double N) const;
  // theta = delta - 1 with delta_bar = 1, c_{i,j} stored at (0, i, j).
  LogPolySeries as_series() const;
};

HensleyExpansion hensley_expansion(int p, const QTerms& q);
HensleyExpansion hensley_expansion(int p, double c20);

struct LogLogVars {
  double C, D, E;
  static LogLogVars from_log_inv_b(double C);
};

struct LogLogCoefficients {
  int k_max = 0;
  std::map<std::pair<int, int>, Rational> c;  // (k, l) -> c_{k,l}, 1 <= l <= k
  Rational at(int k, int l) const;
};

// alpha = log(1 - u - v alpha) expanded in u = E/D, v = 1/D;
// c_{k,l} is the coefficient of u^l v^{k-l}.
LogLogCoefficients loglog_coefficients(int k_max);

// (1/C) [D - E - sum_{k <= k_max} c_{k,l} E^l / D^k]
double loglog_series_theta(const LogLogVars& v, const LogLogCoefficients& c, int k_max);

struct LogLogSolution {
  double theta = 0.0;         // fixed-point iteration
  double theta_newton = 0.0;  // safeguarded Newton on the original equation
  double alpha = 0.0;
  int iterations = 0;
  double series_theta = 0.0;  // truncated symbolic prediction (the f = 1 series)
  int series_order = 0;
};

// Solves B^theta = theta f(theta, B^theta) with C = log(1/B) given directly so
// that very small B do not underflow.
LogLogSolution loglog_solve_numeric(double log_inv_b,
                                    const std::function<double(double, double)>& f,
                                    int series_order = 6);

// 1/2 + (1/(2 log N)) [D - E - sum c_{k,l} E^l / D^k], C = log N.
double good_estimate(long long N, int k_max);

struct ExampleReport {
  long long N = 0;
  double direct = 0.0;
  double direct_error = 0.0;
  double prediction = 0.0;
  double residual = 0.0;
  double alt_prediction = 0.0;
  double alt_residual = 0.0;
  double statistic = 0.0;      // the scaled residual the sweep fits
  double alt_statistic = 0.0;
};

// 4 phi^{-1} log(phi) / (1 + phi^{-2})
double pair_c21();

// set:N,N+1.  prediction: (log phi + c21/(N^2 log N)) / (2 log N);
// statistic: (2 theta log N - log phi) N^2 log N.
// alt_prediction: from 2 N^{-2 theta} (1 - theta/N) = 1, i.e.
// (log 2 - log 2/(2 N log N)) / (2 log N); alt_statistic: (2 theta log N - log 2) N log N.
ExampleReport pair_example_theta(long long N, const DimensionOptions& opt = {});

// set:1,N.  prediction uses -log log phi, alt_prediction -log(2 log phi),
// both with D = log log N; statistic is the log-log solver theta with
// f = 2 log phi and C = 2 log N.
ExampleReport one_n_example_theta(long long N, const DimensionOptions& opt = {});

// fib:geq:N against (log N - log log N) / (2 log(phi) N); statistic is
// residual * N / log log N.
ExampleReport fibonacci_family_check(long long N, const DimensionOptions& opt = {});

}  // namespace cfdim
