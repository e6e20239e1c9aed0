#include "cfdim/euler_maclaurin.hpp"

#include <boost/math/special_functions/zeta.hpp>
#include <mutex>

#include "cfdim/series.hpp"

namespace cfdim {

const std::vector<double>& bernoulli_even_over_factorial() {
  static std::vector<double> table;
  static std::once_flag once;
  std::call_once(once, [] {
    for (int k = 0; k <= 32; ++k)
      table.push_back(to_double(bernoulli(2 * k) / factorial(static_cast<unsigned>(2 * k))));
  });
  return table;
}

double em_remainder_bound(double sigma, double Q, int p) {
  double rising = 1.0;
  for (int l = 0; l < p - 1; ++l) rising *= sigma + l;
  const double zp = boost::math::zeta(static_cast<double>(p));
  return 2.0 * zp / std::pow(2.0 * M_PI, p) * rising * std::pow(Q, -sigma - p + 1);
}

int em_shift(double sigma, double q, int p, double rel_tol) {
  // ratio of the bound to Q^{1-sigma}/(sigma-1) is
  //   2 zeta(p) (sigma-1) (sigma)_{p-1} / ((2 pi)^p Q^p)
  double rising = 1.0;
  for (int l = 0; l < p - 1; ++l) rising *= sigma + l;
  const double zp = boost::math::zeta(static_cast<double>(p));
  const double num = 2.0 * zp * (sigma - 1.0) * rising / (rel_tol * std::pow(2.0 * M_PI, p));
  const double qmin = std::pow(num, 1.0 / p);
  if (qmin <= q) return 0;
  const double m = std::ceil(qmin - q);
  return m > 1e7 ? 10000000 : static_cast<int>(m);
}

TailSum hurwitz_tail(double s, long long N, double x, int p, double rel_tol) {
  const double sigma = 2.0 * s;
  if (!(sigma > 1.0)) throw DivergentSumError("hurwitz_tail: needs 2s > 1");
  if (p < 2 || p > 16 || p % 2) throw DomainError("hurwitz_tail: order must be even in [2, 16]");
  if (N < 0 || !(x >= 0.0)) throw DomainError("hurwitz_tail: needs N >= 0 and x >= 0");
  const double q = static_cast<double>(N) + x;
  if (!(q > 0.0)) throw DomainError("hurwitz_tail: first term is singular");
  const int shift = em_shift(sigma, q, p, rel_tol);
  const double value = hurwitz_zeta_em(sigma, q, p, shift);
  return {value, em_remainder_bound(sigma, q + shift, p), shift};
}

}  // namespace cfdim
