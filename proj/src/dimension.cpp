#include "cfdim/dimension.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "cfdim/errors.hpp"

namespace cfdim {

namespace {

struct Bracket {
  double a, fa, b, fb;
};

}  // namespace

double bowen_root(const Alphabet& alphabet, const GridPtr& grid, int p, double lo, double hi,
                  int* evaluations) {
  auto P = [&](double s) {
    if (evaluations) ++*evaluations;
    return pressure(alphabet, s, grid, p);
  };
  Bracket br{lo, P(lo), hi, P(hi)};
  if (std::abs(br.fa) <= 1e-14) return lo;
  if (!(br.fa > 0.0) || !(br.fb < 0.0))
    throw NumericalError("bowen_root: pressure does not change sign on [" + std::to_string(lo) +
                         ", " + std::to_string(hi) + "]");
  for (int k = 0; k < 3; ++k) {
    const double c = 0.5 * (br.a + br.b);
    const double fc = P(c);
    if (fc == 0.0) return c;
    (fc > 0 ? br.a : br.b) = c;
    (fc > 0 ? br.fa : br.fb) = fc;
  }
  // Secant from the bracket ends, falling back to bisection when a step
  // leaves the bracket or stalls.
  double x0 = br.a, f0 = br.fa, x1 = br.b, f1 = br.fb;
  for (int it = 0; it < 100; ++it) {
    double x2 = x1 - f1 * (x1 - x0) / (f1 - f0);
    if (!(x2 > br.a && x2 < br.b) || !std::isfinite(x2)) x2 = 0.5 * (br.a + br.b);
    const double f2 = P(x2);
    if (f2 == 0.0) return x2;
    if (f2 > 0) {
      br.a = x2;
      br.fa = f2;
    } else {
      br.b = x2;
      br.fb = f2;
    }
    const double step = std::abs(x2 - x1);
    x0 = x1;
    f0 = f1;
    x1 = x2;
    f1 = f2;
    if (step <= 4e-16 * std::max(1.0, std::abs(x2)) || br.b - br.a <= 4e-16) return x2;
    if (std::abs(f2) < 1e-16 && it > 1) return x2;
  }
  return x1;
}

DimensionResult bowen_dimension(const Alphabet& alphabet, const DimensionOptions& opt) {
  DimensionResult r;
  if (alphabet.is_empty()) {
    r.delta = -std::numeric_limits<double>::infinity();
    r.empty = true;
    return r;
  }
  const double lo0 = alphabet.is_finite() ? 0.0 : alphabet.convergence_abscissa() + 1e-6;
  const double hi0 = 1.0 + 1e-6;
  double prev = std::numeric_limits<double>::quiet_NaN();
  double prev_err = 0.0;
  for (int m = opt.m_start; m <= opt.m_max; m *= 2) {
    auto grid = make_grid(m);
    double delta;
    bool done = false;
    if (std::isfinite(prev)) {
      // Narrow bracket around the coarser root; fall back to the full one.
      const double w = std::max(1e-7, 100.0 * prev_err);
      const double a = std::max(lo0, prev - w), b = std::min(hi0, prev + w);
      try {
        delta = bowen_root(alphabet, grid, opt.tail_order, a, b, &r.pressure_evaluations);
        done = true;
      } catch (const NumericalError&) {
      }
    }
    if (!done) delta = bowen_root(alphabet, grid, opt.tail_order, lo0, hi0, &r.pressure_evaluations);
    if (std::isfinite(prev)) {
      const double err = std::abs(delta - prev);
      if (err < opt.tol || (!opt.require_tol && 2 * m > opt.m_max)) {
        r.delta = delta;
        r.error_estimate = err;
        r.grid_size = m;
        r.pressure_residual = std::abs(pressure(alphabet, delta, grid, opt.tail_order));
        return r;
      }
      prev_err = err;
    }
    prev = delta;
  }
  std::ostringstream msg;
  msg << "bowen_dimension: tolerance " << opt.tol << " not reached at grid size " << opt.m_max;
  throw NumericalError(msg.str());
}

DimensionResult bowen_dimension(const Alphabet& alphabet, double tol) {
  DimensionOptions opt;
  opt.tol = tol;
  return bowen_dimension(alphabet, opt);
}

Interval jarnik_bounds(long long N) {
  if (N < 8) throw DomainError("jarnik_bounds: N must be at least 8");
  const double n = static_cast<double>(N);
  return {1.0 - 4.0 / (n * std::log(2.0)), 1.0 - 1.0 / (8.0 * n * std::log(n))};
}

Interval kurzweil_bounds(long long N) {
  if (N < 1000) throw DomainError("kurzweil_bounds: N must be at least 1000");
  const double n = static_cast<double>(N);
  return {1.0 - 0.99 / n, 1.0 - 0.25 / n};
}

Interval good_bounds(long long N) {
  if (N < 20) throw DomainError("good_bounds: N must be at least 20");
  const double n = static_cast<double>(N);
  return {0.5 + 1.0 / (2.0 * std::log(n + 2.0)),
          0.5 + std::log(std::log(n - 1.0)) / (2.0 * std::log(n - 1.0))};
}

}  // namespace cfdim
