#pragma once

#include <cmath>
#include <vector>

#include "cfdim/alphabet.hpp"
#include "cfdim/euler_maclaurin.hpp"
#include "cfdim/jet.hpp"

namespace cfdim {

// Sum over n >= t.start_index of (s_n + x)^{-sigma} in closed form.
// `p` is the Euler-Maclaurin order used for Hurwitz sums and rel_tol the
// accepted remainder relative to the leading term.
template <class T>
T tail_power_sum(const TailDescriptor& t, const T& sigma, double x, int p, double rel_tol);

// Sum_{n in E} n^{-sigma}, explicit part plus closed-form tails.
template <class T>
T alphabet_power_sum(const Alphabet& alphabet, const T& sigma, int p = 8);

namespace detail {

template <class T>
T hurwitz_auto(const T& sigma, double q, int p, double rel_tol) {
  return hurwitz_zeta_em(sigma, q, p, em_shift(jet_value(sigma), q, p, rel_tol));
}

template <class T>
T binomial_neg(const T& tau, int h) {
  // binom(-tau, h) = (-tau)(-tau-1)...(-tau-h+1)/h!
  T out = make_like(tau, 1.0);
  for (int r = 0; r < h; ++r) out = out * ((-tau - static_cast<double>(r)) / (r + 1.0));
  return out;
}

template <class T>
T polynomial_tail(const TailDescriptor& t, const T& sigma, double x, int p, double rel_tol) {
  using std::exp;
  using std::log;
  const int d = t.degree;
  const std::vector<double>& c = t.poly_coeffs;
  const double n0 = static_cast<double>(t.start_index);
  if (d == 1) {
    const double c1 = c[1];
    const T scale = exp(-sigma * std::log(c1));
    return scale * hurwitz_auto(sigma, n0 + (c[0] + x) / c1, p, rel_tol);
  }
  // (P(n) + x)^{-sigma} = n^{-d sigma} c_d^{-sigma} (1 + w(z))^{-sigma}, z = 1/n.
  const double cd = c[static_cast<std::size_t>(d)];
  const int kMaxTerms = 400;
  std::vector<double> w(static_cast<std::size_t>(kMaxTerms + 1), 0.0);
  for (int r = 1; r <= d; ++r) w[r] = c[static_cast<std::size_t>(d - r)] / cd;
  w[static_cast<std::size_t>(d)] += x / cd;
  // L = log(1 + w), via L' (1 + w) = w'.
  std::vector<double> L(w.size(), 0.0);
  for (int n = 1; n <= kMaxTerms; ++n) {
    double s = n * w[n];
    for (int r = 1; r < n; ++r) s -= r * L[r] * w[n - r];
    L[n] = s / n;
  }
  std::vector<T> E;
  E.push_back(make_like(sigma, 1.0));
  const T dsig = sigma * static_cast<double>(d);
  T total = hurwitz_auto(dsig, n0, p, rel_tol);
  const double lead = std::abs(jet_value(total));
  double zpow = 1.0;
  int quiet = 0;
  for (int n = 1; n <= kMaxTerms; ++n) {
    T e = make_like(sigma, 0.0);
    for (int r = 1; r <= n; ++r)
      if (L[r] != 0.0) e += E[static_cast<std::size_t>(n - r)] * (r * L[r]);
    e = e * (-1.0 / n) * sigma;
    E.push_back(e);
    zpow /= n0;
    if (std::abs(jet_value(e)) * zpow < 1e-19 * lead) {
      if (++quiet >= d + 2) break;
      continue;
    }
    quiet = 0;
    total += e * hurwitz_auto(dsig + static_cast<double>(n), n0, p, rel_tol);
  }
  return exp(-sigma * std::log(cd)) * total;
}

template <class T>
T geometric_tail(const TailDescriptor& t, const T& sigma, double x) {
  using std::exp;
  using std::expm1;
  using std::log;
  const double a = t.binet_a, lam = t.binet_lambda, b = t.binet_b, rho = t.binet_rho;
  const double n0 = static_cast<double>(t.start_index);
  const double loglam = std::log(lam);
  T total = make_like(sigma, 0.0);
  double lead = 0.0;
  // (s+x)^{-sigma} = sum_l binom(-sigma, l) x^l s^{-sigma-l}
  for (int l = 0; l < 200; ++l) {
    const T tau = sigma + static_cast<double>(l);
    const T bl = binomial_neg(sigma, l);
    // sum_n s_n^{-tau} = a^{-tau} sum_h binom(-tau,h) b^h (lam^{-tau} rho^h)^{n0} / (1 - lam^{-tau} rho^h)
    T inner = make_like(sigma, 0.0);
    for (int h = 0; h < 200; ++h) {
      if (h > 0 && b == 0.0) break;
      const double rh = std::pow(rho, h);
      const T lt = exp(-tau * loglam);  // lam^{-tau}
      T num = exp(-tau * (loglam * n0)) * std::pow(rh, n0);
      T den = (h == 0) ? -expm1(-tau * loglam) : 1.0 - lt * rh;
      T term = binomial_neg(tau, h) * std::pow(b, h) * num / den;
      inner += term;
      if (h > 0 && std::abs(jet_value(term)) < 1e-19 * std::abs(jet_value(inner))) break;
    }
    T contrib = bl * std::pow(x, l) * exp(-tau * std::log(a)) * inner;
    if (l == 0 && x == 0.0) return contrib;
    total += contrib;
    lead = std::max(lead, std::abs(jet_value(total)));
    if (l > 0 && std::abs(jet_value(contrib)) < 1e-19 * lead) break;
  }
  return total;
}

}  // namespace detail

template <class T>
T tail_power_sum(const TailDescriptor& t, const T& sigma, double x, int p, double rel_tol) {
  if (t.decay == TailDescriptor::Decay::polynomial) {
    if (!(jet_value(sigma) * t.degree > 1.0))
      throw DivergentSumError("tail sum diverges at this exponent");
    return detail::polynomial_tail(t, sigma, x, p, rel_tol);
  }
  if (!(jet_value(sigma) > 0.0)) throw DivergentSumError("tail sum diverges at this exponent");
  return detail::geometric_tail(t, sigma, x);
}

template <class T>
T alphabet_power_sum(const Alphabet& alphabet, const T& sigma, int p) {
  using std::exp;
  auto en = alphabet.split(64.0);
  T total = make_like(sigma, 0.0);
  for (auto it = en.explicit_elements.rbegin(); it != en.explicit_elements.rend(); ++it)
    total += exp(-sigma * std::log(static_cast<double>(*it)));
  for (const auto& t : en.tails) total += tail_power_sum(t, sigma, 0.0, p, 1e-17);
  return total;
}

}  // namespace cfdim
