#include "cfdim/expansions.hpp"

#include <cmath>

#include "cfdim/errors.hpp"

namespace cfdim {

namespace {

const double kPhi = (1.0 + std::sqrt(5.0)) / 2.0;
const double kZeta2 = M_PI * M_PI / 6.0;

}  // namespace

Rational tree_closed_form(int j) {
  if (j < 0) throw DomainError("tree_closed_form: negative index");
  if (j == 0) return Rational(1);
  return pow(Rational(j + 1), j - 1) / factorial(static_cast<unsigned>(j));
}

TreeCoefficients tree_coefficients(int j_max) {
  if (j_max < 0 || j_max > 30) throw DomainError("tree_coefficients: j_max must be in [0, 30]");
  const std::vector<std::string> vars{"x"};
  const std::vector<int> deg{j_max};
  const RationalSeries x = RationalSeries::variable(vars, deg, 0);
  RationalSeries F = RationalSeries::constant(vars, deg, Rational(1));
  // Each pass fixes one more coefficient.
  for (int it = 0; it <= j_max; ++it) F = exp(x * F);
  TreeCoefficients out;
  for (int j = 0; j <= j_max; ++j) {
    Rational a = F.coeff({j});
    if (a != tree_closed_form(j))
      throw NumericalError("tree_coefficients: recursion disagrees with closed form at j = " +
                           std::to_string(j));
    out.a.push_back(a);
  }
  return out;
}

std::vector<Rational> tree_coefficients_by_reversion(int j_max) {
  const std::vector<std::string> vars{"w"};
  const std::vector<int> deg{j_max + 1};
  const RationalSeries w = RationalSeries::variable(vars, deg, 0);
  const RationalSeries y = w * exp(-w);
  const RationalSeries W = y.reversion();
  std::vector<Rational> out;
  for (int j = 0; j <= j_max; ++j) out.push_back(W.coeff({j + 1}));
  return out;
}

double c_ii1(int i) {
  if (i < 1 || i > 20) throw DomainError("c_ii1: i must be in [1, 20]");
  double r = std::pow(2.0, i - 1) * std::pow(static_cast<double>(i), i - 2);
  for (int k = 2; k <= i - 1; ++k) r /= k;
  return -r * std::pow(6.0 / (M_PI * M_PI), i);
}

double c_ii1_via_tree(int i) {
  if (i < 1 || i > 20) throw DomainError("c_ii1: i must be in [1, 20]");
  return -std::pow(2.0, i - 1) / std::pow(kZeta2, i) * to_double(tree_closed_form(i - 1));
}

double HensleyExpansion::evaluate(double N) const {
  const double L = std::log(N);
  double s = 1.0;
  for (const auto& [ij, c] : coefficients) s += c * std::pow(L, ij.second) / std::pow(N, ij.first);
  return s;
}

LogPolySeries HensleyExpansion::as_series() const {
  LogPolySeries s{Rational(1)};
  for (const auto& [ij, c] : coefficients) s.add_term(0, ij.first, ij.second, c);
  return s;
}

HensleyExpansion hensley_expansion(int p, double c20) {
  if (p < 1 || p > 3)
    throw DomainError("hensley_expansion: orders above 3 need Q-terms that are not available");
  HensleyExpansion h;
  h.order = p;
  h.c10 = c_ii1(1);
  h.c21 = c_ii1(2);
  h.c20 = c20;
  for (int i = 1; i <= p; ++i) h.coefficients[{i, i - 1}] = c_ii1(i);
  if (p >= 2) h.coefficients[{2, 0}] = c20;
  return h;
}

HensleyExpansion hensley_expansion(int p, const QTerms& q) {
  return hensley_expansion(p, coefficient_c20(q));
}

LogLogVars LogLogVars::from_log_inv_b(double C) {
  if (!(C > M_E)) throw DomainError("log-log variables need log(1/B) > e");
  const double D = std::log(C);
  return {C, D, std::log(D)};
}

Rational LogLogCoefficients::at(int k, int l) const {
  auto it = c.find({k, l});
  return it == c.end() ? Rational(0) : it->second;
}

LogLogCoefficients loglog_coefficients(int k_max) {
  if (k_max < 0 || k_max > 12) throw DomainError("loglog_coefficients: k_max must be in [0, 12]");
  LogLogCoefficients out;
  out.k_max = k_max;
  if (k_max == 0) return out;
  const std::vector<std::string> vars{"u", "v"};
  const std::vector<int> deg{k_max, k_max};
  const RationalSeries u = RationalSeries::variable(vars, deg, 0);
  const RationalSeries v = RationalSeries::variable(vars, deg, 1);
  const RationalSeries one = RationalSeries::constant(vars, deg, Rational(1));
  RationalSeries alpha(vars, deg);
  for (int it = 0; it <= k_max + 1; ++it) alpha = log(one - u - v * alpha);
  for (int k = 1; k <= k_max; ++k)
    for (int l = 0; l <= k; ++l) {
      Rational c = alpha.coeff({l, k - l});
      if (c != 0) out.c[{k, l}] = c;
    }
  return out;
}

double loglog_series_theta(const LogLogVars& v, const LogLogCoefficients& c, int k_max) {
  double alpha = 0.0;
  for (const auto& [kl, coef] : c.c) {
    if (kl.first > k_max) continue;
    alpha += to_double(coef) * std::pow(v.E, kl.second) / std::pow(v.D, kl.first);
  }
  return (v.D - v.E - alpha) / v.C;
}

LogLogSolution loglog_solve_numeric(double log_inv_b, const std::function<double(double, double)>& f,
                                    int series_order) {
  const LogLogVars v = LogLogVars::from_log_inv_b(log_inv_b);
  if (!(f(0.0, 0.0) > 0.0)) throw DomainError("loglog_solve_numeric: f(0,0) must be positive");
  LogLogSolution s;
  // alpha = log(1 - E/D - alpha/D) + log f(theta, (D/C) e^alpha)
  double alpha = 0.0;
  bool converged = false;
  for (int it = 1; it <= 500; ++it) {
    const double theta = (v.D - v.E - alpha) / v.C;
    const double arg = 1.0 - v.E / v.D - alpha / v.D;
    if (!(arg > 0.0)) throw NumericalError("loglog_solve_numeric: iteration left the domain");
    const double fv = f(theta, (v.D / v.C) * std::exp(alpha));
    if (!(fv > 0.0)) throw NumericalError("loglog_solve_numeric: f became non-positive");
    const double next = std::log(arg) + std::log(fv);
    s.iterations = it;
    const double change = std::abs(next - alpha);
    alpha = next;
    if (change <= 1e-15 * std::max(1.0, std::abs(alpha))) {
      converged = true;
      break;
    }
  }
  if (!converged) throw NumericalError("loglog_solve_numeric: fixed point did not converge");
  s.alpha = alpha;
  s.theta = (v.D - v.E - alpha) / v.C;

  // G(theta) = -C theta - log theta - log f(theta, e^{-C theta}), decreasing.
  auto G = [&](double t) { return -v.C * t - std::log(t) - std::log(f(t, std::exp(-v.C * t))); };
  double lo = 1e-300, hi = 1.0;
  while (G(hi) > 0 && hi < 1e6) hi *= 2;
  double t = s.theta > lo && s.theta < hi ? s.theta : 0.5 * hi;
  for (int it = 0; it < 200; ++it) {
    const double g = G(t);
    if (g > 0) lo = t; else hi = t;
    const double h = 1e-7 * t;
    const double dg = (G(t + h) - G(t - h)) / (2 * h);
    double next = t - g / dg;
    if (!(next > lo && next < hi) || !std::isfinite(next)) next = 0.5 * (lo + hi);
    if (std::abs(next - t) <= 1e-17 + 1e-16 * t) {
      t = next;
      break;
    }
    t = next;
  }
  s.theta_newton = t;
  s.series_order = series_order;
  s.series_theta = loglog_series_theta(v, loglog_coefficients(series_order), series_order);
  return s;
}

double good_estimate(long long N, int k_max) {
  if (N < 20) throw DomainError("good_estimate: N must be at least 20");
  const LogLogVars v = LogLogVars::from_log_inv_b(std::log(static_cast<double>(N)));
  return 0.5 + 0.5 * loglog_series_theta(v, loglog_coefficients(k_max), k_max);
}

double pair_c21() {
  const double ip = 1.0 / kPhi;
  return 4.0 * ip * std::log(kPhi) / (1.0 + ip * ip);
}

ExampleReport pair_example_theta(long long N, const DimensionOptions& opt) {
  if (N < 3) throw DomainError("pair_example_theta: N must be at least 3");
  const auto alphabet =
      parse_alphabet("set:" + std::to_string(N) + "," + std::to_string(N + 1));
  const auto d = bowen_dimension(alphabet, opt);
  const double n = static_cast<double>(N), L = std::log(n);
  ExampleReport r;
  r.N = N;
  r.direct = d.delta;
  r.direct_error = d.error_estimate;
  r.prediction = (std::log(kPhi) + pair_c21() / (n * n * L)) / (2.0 * L);
  r.residual = r.direct - r.prediction;
  r.statistic = (2.0 * r.direct * L - std::log(kPhi)) * n * n * L;
  r.alt_prediction = (std::log(2.0) - std::log(2.0) / (2.0 * n * L)) / (2.0 * L);
  r.alt_residual = r.direct - r.alt_prediction;
  r.alt_statistic = (2.0 * r.direct * L - std::log(2.0)) * n * L;
  return r;
}

ExampleReport one_n_example_theta(long long N, const DimensionOptions& opt) {
  if (N < 16) throw DomainError("one_n_example_theta: N must be at least 16");
  const auto alphabet = parse_alphabet("set:1," + std::to_string(N));
  const auto d = bowen_dimension(alphabet, opt);
  const double n = static_cast<double>(N), L = std::log(n);
  const double D = std::log(L), E = std::log(D);
  ExampleReport r;
  r.N = N;
  r.direct = d.delta;
  r.direct_error = d.error_estimate;
  r.prediction = (D - E - std::log(std::log(kPhi))) / (2.0 * L);
  r.residual = r.direct - r.prediction;
  r.alt_prediction = (D - E - std::log(2.0 * std::log(kPhi))) / (2.0 * L);
  r.alt_residual = r.direct - r.alt_prediction;
  const double f0 = 2.0 * std::log(kPhi);
  r.statistic = loglog_solve_numeric(2.0 * L, [f0](double, double) { return f0; }).theta;
  r.alt_statistic = r.direct - r.statistic;
  return r;
}

ExampleReport fibonacci_family_check(long long N, const DimensionOptions& opt) {
  if (N < 10) throw DomainError("fibonacci_family_check: N must be at least 10");
  const auto alphabet = parse_alphabet("fib:geq:" + std::to_string(N));
  const auto d = bowen_dimension(alphabet, opt);
  const double n = static_cast<double>(N), L = std::log(n);
  ExampleReport r;
  r.N = N;
  r.direct = d.delta;
  r.direct_error = d.error_estimate;
  r.prediction = (L - std::log(L)) / (2.0 * std::log(kPhi) * n);
  r.residual = r.direct - r.prediction;
  r.statistic = r.residual * n / std::log(L);
  return r;
}

}  // namespace cfdim
