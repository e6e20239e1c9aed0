#pragma once

#include "cfdim/euler_maclaurin.hpp"
#include "cfdim/spectral.hpp"

namespace cfdim {

struct DimensionResult {
  double delta = 0.0;           // -infinity for the empty alphabet
  double error_estimate = 0.0;  // |delta_m - delta_{m/2}|
  int grid_size = 0;
  double pressure_residual = 0.0;  // |P(delta)| on the finest grid
  bool empty = false;
  int pressure_evaluations = 0;
};

struct DimensionOptions {
  double tol = 1e-12;
  int tail_order = 8;
  int m_start = 16;
  int m_max = 256;
  // When false the finest grid's answer is returned even if tol was missed.
  bool require_tol = true;
};

DimensionResult bowen_dimension(const Alphabet& alphabet, const DimensionOptions& opt = {});
DimensionResult bowen_dimension(const Alphabet& alphabet, double tol);

// Root of s -> P(s) on one grid inside [lo, hi] (P(lo) > 0 > P(hi)).
// `evaluations` is incremented per pressure evaluation.
double bowen_root(const Alphabet& alphabet, const GridPtr& grid, int p, double lo, double hi,
                  int* evaluations = nullptr);

struct Interval {
  double lo, hi;
  bool contains(double x) const { return lo <= x && x <= hi; }
};

// Classical two-sided bounds for leq:N (N >= 8, N >= 1000) and geq:N (N >= 20).
Interval jarnik_bounds(long long N);
Interval kurzweil_bounds(long long N);
Interval good_bounds(long long N);

}  // namespace cfdim
