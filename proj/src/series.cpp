#include "cfdim/series.hpp"

#include <boost/math/special_functions/zeta.hpp>
#include <mutex>

namespace cfdim {

namespace {

const std::vector<Rational>& bernoulli_table() {
  static std::vector<Rational> table;
  static std::once_flag once;
  std::call_once(once, [] {
    constexpr int kMax = 64;
    table.resize(kMax + 1);
    table[0] = 1;
    // sum_{k=0}^{n} binom(n+1, k) B_k = 0, giving B_1 = -1/2.
    for (int n = 1; n <= kMax; ++n) {
      Rational s = 0;
      for (int k = 0; k < n; ++k) s += binomial(n + 1, k) * table[k];
      table[n] = -s / Rational(n + 1);
    }
  });
  return table;
}

}  // namespace

Rational bernoulli(int n, BernoulliSign sign) {
  if (n < 0 || n > 64) throw DomainError("bernoulli: index must be in [0, 64]");
  if (n == 1) return sign == BernoulliSign::plus ? Rational(1, 2) : Rational(-1, 2);
  return bernoulli_table()[n];
}

int RationalPolynomial::degree() const {
  for (int d = static_cast<int>(coeffs.size()) - 1; d >= 0; --d)
    if (coeffs[d] != 0) return d;
  return -1;
}

double RationalPolynomial::evaluate(double x) const {
  double acc = 0.0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + to_double(*it);
  return acc;
}

RationalPolynomial em_polynomial(int i, BernoulliSign sign) {
  if (i < 1 || i > 32) throw DomainError("em_polynomial: index must be in [1, 32]");
  // (1+a)(2+a)...(i-1+a), ascending coefficients.
  std::vector<Rational> poly{Rational(1)};
  for (int l = 1; l <= i - 1; ++l) {
    std::vector<Rational> next(poly.size() + 1, Rational(0));
    for (std::size_t k = 0; k < poly.size(); ++k) {
      next[k] += poly[k] * l;
      next[k + 1] += poly[k];
    }
    poly = std::move(next);
  }
  Rational lead = bernoulli(i, sign) / factorial(static_cast<unsigned>(i));
  for (auto& c : poly) c *= lead;
  return RationalPolynomial{std::move(poly)};
}

EmTail::EmTail(int p, BernoulliSign sign)
    : p_(p), sign_(sign), body_({"z", "alpha"}, {std::max(p, 1), std::max(p - 1, 0)}) {
  if (p < 2 || p > 16) throw DomainError("em_tail: order must be in [2, 16]");
  for (int i = 1; i <= p; ++i) {
    auto poly = em_polynomial(i, sign);
    for (std::size_t k = 0; k < poly.coeffs.size(); ++k)
      if (poly.coeffs[k] != 0) body_.set({i, static_cast<int>(k)}, poly.coeffs[k]);
  }
}

double EmTail::evaluate(double alpha, double N) const {
  if (!(alpha > 0)) throw DivergentSumError("em_tail: alpha must be positive");
  const double lead = std::pow(N, -alpha);
  return lead / alpha + lead * body_.evaluate({1.0 / N, alpha});
}

double EmTail::remainder_bound(double alpha, double N) const {
  // int_N^inf |f^{(p)}| = |f^{(p-1)}(N)| = (1+alpha)_{p-1} N^{-(alpha+p)}.
  double rising = 1.0;
  for (int l = 0; l < p_ - 1; ++l) rising *= (1.0 + alpha + l);
  const double zp = boost::math::zeta(static_cast<double>(p_));
  return 2.0 * zp / std::pow(2.0 * M_PI, p_) * rising * std::pow(N, -(alpha + p_));
}

EmTail em_tail(int p, BernoulliSign sign) { return EmTail(p, sign); }

void LogPolySeries::add_term(int i, int k, int j, double c) {
  auto& slot = terms_[{i, k, j}];
  slot.value += c;
  slot.exact.reset();
}

void LogPolySeries::add_term(int i, int k, int j, const Rational& c) {
  auto& slot = terms_[{i, k, j}];
  Rational total = slot.exact.value_or(Rational(0)) + c;
  if (slot.value != 0.0 && !slot.exact) {
    slot.value += to_double(c);
    return;
  }
  slot.exact = total;
  slot.value = to_double(total);
}

double LogPolySeries::coefficient(int i, int k, int j) const {
  auto it = terms_.find({i, k, j});
  return it == terms_.end() ? 0.0 : it->second.value;
}

double LogPolySeries::term_value(const Key& key, double N) const {
  auto it = terms_.find(key);
  if (it == terms_.end()) return 0.0;
  auto [i, k, j] = key;
  const double expo = i + k * to_double(delta_bar_);
  return it->second.value * std::pow(std::log(N), j) * std::pow(N, -expo);
}

double LogPolySeries::evaluate(double N) const {
  double s = 0.0;
  for (const auto& [key, c] : terms_) s += term_value(key, N);
  return s;
}

bool LogPolySeries::in_solution_form() const {
  for (const auto& [key, c] : terms_)
    if (std::get<2>(key) > std::get<1>(key) - 1) return false;
  return true;
}

nlohmann::json LogPolySeries::to_json() const {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& [key, c] : terms_) {
    nlohmann::json t = {{"i", std::get<0>(key)},
                        {"k", std::get<1>(key)},
                        {"j", std::get<2>(key)},
                        {"value", c.value}};
    if (c.exact) t["exact"] = to_fraction_string(*c.exact);
    terms.push_back(t);
  }
  return {{"delta_bar", to_fraction_string(delta_bar_)}, {"terms", terms}};
}

}  // namespace cfdim
