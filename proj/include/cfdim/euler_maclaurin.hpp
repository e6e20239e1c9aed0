#pragma once

#include <cmath>
#include <type_traits>
#include <vector>

#include "cfdim/errors.hpp"
#include "cfdim/jet.hpp"

namespace cfdim {

// B_{2k}/(2k)! as doubles, k = 0..32.
const std::vector<double>& bernoulli_even_over_factorial();

struct TailSum {
  double value;
  double remainder_bound;
  int explicit_terms;  // terms summed directly before switching to Euler-Maclaurin
};

// Sum_{n >= N} (n + x)^{-2s} by Euler-Maclaurin of even order p (2..16).
// Enough leading terms are summed explicitly that the remainder bound drops
// below rel_tol times the value; the bound returned is the one actually
// attained.
TailSum hurwitz_tail(double s, long long N, double x, int p = 8, double rel_tol = 1e-17);

// Remainder bound 2 zeta(p)/(2 pi)^p * (sigma)_{p-1} * Q^{-sigma-p+1} for
// Sum_{n>=0} (Q+n)^{-sigma}.
double em_remainder_bound(double sigma, double Q, int p);

// Smallest shift M such that the order-p remainder at q + M is below
// rel_tol times the leading integral term.
int em_shift(double sigma, double q, int p, double rel_tol);

// Hurwitz zeta(sigma, q) = Sum_{n>=0} (q+n)^{-sigma} for sigma > 1, q > 0,
// generic in the scalar type so that Jet exponents produce derivatives in
// sigma.  `shift` terms are summed directly first.
// base^{-sigma}; std::pow for plain doubles avoids the error exp(-sigma log q)
// picks up from rounding the product.
template <class T>
T inverse_power(const T& sigma, double base) {
  if constexpr (std::is_same_v<T, double>) {
    return std::pow(base, -sigma);
  } else {
    using std::exp;
    return exp(-sigma * std::log(base));
  }
}

template <class T>
T hurwitz_zeta_em(const T& sigma, double q, int p, int shift) {
  using std::exp;
  using std::log;
  const double s0 = jet_value(sigma);
  if (!(s0 > 1.0)) throw DivergentSumError("hurwitz zeta: exponent must exceed 1");
  if (!(q > 0.0)) throw DomainError("hurwitz zeta: q must be positive");
  T total = make_like(sigma, 0.0);
  for (int n = 0; n < shift; ++n) total += inverse_power(sigma, q + n);
  const double Q = q + shift;
  const T qs = inverse_power(sigma, Q);
  total += qs * Q / (sigma - 1.0);
  total += qs * 0.5;
  const auto& b = bernoulli_even_over_factorial();
  // term_k = B_{2k}/(2k)! (sigma)_{2k-1} Q^{-sigma-2k+1}
  T rising = sigma;  // (sigma)_1
  double qpow = 1.0 / Q;
  for (int k = 1; 2 * k <= p; ++k) {
    if (k > 1) {
      rising = rising * (sigma + (2.0 * k - 3.0)) * (sigma + (2.0 * k - 2.0));
      qpow /= Q * Q;
    }
    total += rising * qs * (b[static_cast<std::size_t>(k)] * qpow);
  }
  return total;
}

}  // namespace cfdim
