#pragma once

#include <cmath>
#include <cstddef>
#include <map>
#include <nlohmann/json.hpp>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "cfdim/errors.hpp"
#include "cfdim/rational.hpp"

namespace cfdim {

template <class C>
struct CoeffTraits;

template <>
struct CoeffTraits<double> {
  static constexpr bool exact = false;
  static bool is_zero(double c) { return c == 0.0; }
  static double to_double(double c) { return c; }
  static nlohmann::json to_json(double c) { return c; }
  static double from_json(const nlohmann::json& j) { return j.get<double>(); }
};

template <>
struct CoeffTraits<Rational> {
  static constexpr bool exact = true;
  static bool is_zero(const Rational& c) { return c == 0; }
  static double to_double(const Rational& c) { return c.convert_to<double>(); }
  static nlohmann::json to_json(const Rational& c) { return to_fraction_string(c); }
  static Rational from_json(const nlohmann::json& j) {
    if (j.is_number_integer()) return Rational(j.get<long long>());
    return parse_fraction(j.get<std::string>());
  }
};

// Dense multivariate power series truncated to a box: the exponent of
// variable v never exceeds max_degree[v].  Products and compositions drop
// everything outside the box, so truncating inputs first and truncating the
// result afterwards give the same answer.
template <class C>
class TruncatedSeries {
 public:
  using Exponents = std::vector<int>;

  TruncatedSeries() = default;
  TruncatedSeries(std::vector<std::string> vars, std::vector<int> max_degree)
      : vars_(std::move(vars)), deg_(std::move(max_degree)) {
    if (vars_.size() != deg_.size())
      throw DomainError("TruncatedSeries: variable/degree count mismatch");
    stride_.assign(vars_.size(), 1);
    std::size_t size = 1;
    for (std::size_t v = vars_.size(); v-- > 0;) {
      if (deg_[v] < 0) throw DomainError("TruncatedSeries: negative degree");
      stride_[v] = size;
      size *= static_cast<std::size_t>(deg_[v] + 1);
    }
    c_.assign(size, C(0));
  }

  static TruncatedSeries constant(std::vector<std::string> vars, std::vector<int> deg,
                                  const C& value) {
    TruncatedSeries s(std::move(vars), std::move(deg));
    s.c_[0] = value;
    return s;
  }

  static TruncatedSeries variable(std::vector<std::string> vars, std::vector<int> deg,
                                  std::size_t index) {
    TruncatedSeries s(std::move(vars), std::move(deg));
    if (index >= s.vars_.size()) throw DomainError("TruncatedSeries: no such variable");
    if (s.deg_[index] >= 1) s.c_[s.stride_[index]] = C(1);
    return s;
  }

  const std::vector<std::string>& variables() const { return vars_; }
  const std::vector<int>& max_degrees() const { return deg_; }
  std::size_t size() const { return c_.size(); }

  C coeff(const Exponents& e) const {
    auto idx = index_of(e);
    return idx ? c_[*idx] : C(0);
  }
  void set(const Exponents& e, const C& value) {
    auto idx = index_of(e);
    if (!idx) throw DomainError("TruncatedSeries: exponent outside truncation box");
    c_[*idx] = value;
  }
  const C& constant_term() const { return c_[0]; }

  Exponents exponents_of(std::size_t flat) const {
    Exponents e(vars_.size());
    for (std::size_t v = 0; v < vars_.size(); ++v)
      e[v] = static_cast<int>((flat / stride_[v]) % static_cast<std::size_t>(deg_[v] + 1));
    return e;
  }
  const C& flat(std::size_t i) const { return c_[i]; }

  bool is_zero() const {
    for (const auto& c : c_)
      if (!CoeffTraits<C>::is_zero(c)) return false;
    return true;
  }

  TruncatedSeries& operator+=(const TruncatedSeries& o) {
    check_shape(o);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
  }
  TruncatedSeries& operator-=(const TruncatedSeries& o) {
    check_shape(o);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
    return *this;
  }
  TruncatedSeries& operator*=(const C& k) {
    for (auto& c : c_) c *= k;
    return *this;
  }
  TruncatedSeries& operator+=(const C& k) {
    c_[0] += k;
    return *this;
  }
  friend TruncatedSeries operator+(TruncatedSeries a, const TruncatedSeries& b) { return a += b; }
  friend TruncatedSeries operator-(TruncatedSeries a, const TruncatedSeries& b) { return a -= b; }
  friend TruncatedSeries operator*(TruncatedSeries a, const C& k) { return a *= k; }
  friend TruncatedSeries operator*(const C& k, TruncatedSeries a) { return a *= k; }
  friend TruncatedSeries operator+(TruncatedSeries a, const C& k) { return a += k; }
  friend TruncatedSeries operator-(TruncatedSeries a) {
    for (auto& c : a.c_) c = -c;
    return a;
  }

  friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
    a.check_shape(b);
    TruncatedSeries out(a.vars_, a.deg_);
    const std::size_t nv = a.vars_.size();
    std::vector<Exponents> ea;
    std::vector<std::size_t> ia;
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      if (!CoeffTraits<C>::is_zero(a.c_[i])) {
        ia.push_back(i);
        ea.push_back(a.exponents_of(i));
      }
    for (std::size_t j = 0; j < b.c_.size(); ++j) {
      if (CoeffTraits<C>::is_zero(b.c_[j])) continue;
      Exponents eb = b.exponents_of(j);
      for (std::size_t n = 0; n < ia.size(); ++n) {
        bool inside = true;
        std::size_t idx = 0;
        for (std::size_t v = 0; v < nv; ++v) {
          int d = ea[n][v] + eb[v];
          if (d > a.deg_[v]) {
            inside = false;
            break;
          }
          idx += static_cast<std::size_t>(d) * a.stride_[v];
        }
        if (inside) out.c_[idx] += a.c_[ia[n]] * b.c_[j];
      }
    }
    return out;
  }
  TruncatedSeries& operator*=(const TruncatedSeries& o) { return *this = *this * o; }

  // Largest power of a zero-constant series that can survive truncation.
  int nilpotency_bound() const {
    int s = 0;
    for (int d : deg_) s += d;
    return s;
  }

  friend TruncatedSeries exp(const TruncatedSeries& s) {
    TruncatedSeries a = s;
    C scale(1);
    if (!CoeffTraits<C>::is_zero(a.c_[0])) {
      if constexpr (CoeffTraits<C>::exact) {
        throw DomainError("exp: exact series needs zero constant term");
      } else {
        scale = std::exp(a.c_[0]);
        a.c_[0] = 0;
      }
    }
    TruncatedSeries out = constant(a.vars_, a.deg_, C(1));
    TruncatedSeries power = out;
    C fact(1);
    for (int k = 1; k <= a.nilpotency_bound(); ++k) {
      power = power * a;
      if (power.is_zero()) break;
      fact *= k;
      out += power * (C(1) / fact);
    }
    return out * scale;
  }

  friend TruncatedSeries log(const TruncatedSeries& s) {
    TruncatedSeries a = s;
    C shift(0);
    const C& c0 = a.c_[0];
    if constexpr (CoeffTraits<C>::exact) {
      if (c0 != 1) throw DomainError("log: exact series needs unit constant term");
    } else {
      if (!(c0 > 0)) throw DomainError("log: constant term must be positive");
      shift = std::log(c0);
      a *= C(1) / c0;
    }
    a.c_[0] = 0;
    TruncatedSeries out(a.vars_, a.deg_);
    TruncatedSeries power = constant(a.vars_, a.deg_, C(1));
    for (int k = 1; k <= a.nilpotency_bound(); ++k) {
      power = power * a;
      if (power.is_zero()) break;
      out += power * (C(k % 2 ? 1 : -1) / C(k));
    }
    out.c_[0] += shift;
    return out;
  }

  // 1/s; the constant term must be invertible.
  TruncatedSeries reciprocal() const {
    if (CoeffTraits<C>::is_zero(c_[0])) throw DomainError("reciprocal: zero constant term");
    C inv = C(1) / c_[0];
    TruncatedSeries a = *this * inv;
    a.c_[0] = 0;
    TruncatedSeries out = constant(vars_, deg_, C(1));
    TruncatedSeries power = out;
    for (int k = 1; k <= nilpotency_bound(); ++k) {
      power = power * a;
      if (power.is_zero()) break;
      out += power * C(k % 2 ? -1 : 1);
    }
    return out * inv;
  }

  // Substitute variable `var` by g (same shape, zero constant term).
  TruncatedSeries compose(std::size_t var, const TruncatedSeries& g) const {
    check_shape(g);
    if (!CoeffTraits<C>::is_zero(g.c_[0]))
      throw DomainError("compose: inner series needs zero constant term");
    std::vector<TruncatedSeries> slices(static_cast<std::size_t>(deg_[var] + 1),
                                        TruncatedSeries(vars_, deg_));
    for (std::size_t i = 0; i < c_.size(); ++i) {
      if (CoeffTraits<C>::is_zero(c_[i])) continue;
      auto e = exponents_of(i);
      int k = e[var];
      e[var] = 0;
      slices[static_cast<std::size_t>(k)].set(e, c_[i]);
    }
    TruncatedSeries out(vars_, deg_);
    TruncatedSeries power = constant(vars_, deg_, C(1));
    for (std::size_t k = 0; k < slices.size(); ++k) {
      if (k > 0) power = power * g;
      if (power.is_zero()) break;
      out += slices[k] * power;
    }
    return out;
  }

  // Compositional inverse of a univariate series f = a1 x + a2 x^2 + ...
  TruncatedSeries reversion() const {
    if (vars_.size() != 1) throw DomainError("reversion: univariate series only");
    if (!CoeffTraits<C>::is_zero(c_[0]))
      throw DomainError("reversion: series needs zero constant term");
    if (deg_[0] < 1 || CoeffTraits<C>::is_zero(c_[1]))
      throw DomainError("reversion: linear coefficient must be invertible");
    const C inv = C(1) / c_[1];
    TruncatedSeries y = variable(vars_, deg_, 0);
    TruncatedSeries g = y * inv;
    for (int it = 1; it < deg_[0]; ++it) g = g - (compose(0, g) - y) * inv;
    return g;
  }

  double evaluate(const std::vector<double>& x) const {
    if (x.size() != vars_.size()) throw DomainError("evaluate: wrong number of values");
    double sum = 0.0;
    for (std::size_t i = 0; i < c_.size(); ++i) {
      if (CoeffTraits<C>::is_zero(c_[i])) continue;
      auto e = exponents_of(i);
      double t = CoeffTraits<C>::to_double(c_[i]);
      for (std::size_t v = 0; v < e.size(); ++v) t *= std::pow(x[v], e[v]);
      sum += t;
    }
    return sum;
  }

  nlohmann::json to_json() const {
    nlohmann::json terms = nlohmann::json::array();
    for (std::size_t i = 0; i < c_.size(); ++i) {
      if (CoeffTraits<C>::is_zero(c_[i])) continue;
      terms.push_back({{"exponents", exponents_of(i)},
                       {"coefficient", CoeffTraits<C>::to_json(c_[i])}});
    }
    return {{"variables", vars_}, {"max_degree", deg_}, {"terms", terms}};
  }

  static TruncatedSeries from_json(const nlohmann::json& j) {
    TruncatedSeries s(j.at("variables").get<std::vector<std::string>>(),
                      j.at("max_degree").get<std::vector<int>>());
    for (const auto& t : j.at("terms"))
      s.set(t.at("exponents").get<Exponents>(), CoeffTraits<C>::from_json(t.at("coefficient")));
    return s;
  }

  friend bool operator==(const TruncatedSeries& a, const TruncatedSeries& b) {
    return a.vars_ == b.vars_ && a.deg_ == b.deg_ && a.c_ == b.c_;
  }

 private:
  std::optional<std::size_t> index_of(const Exponents& e) const {
    if (e.size() != vars_.size()) throw DomainError("TruncatedSeries: exponent arity");
    std::size_t idx = 0;
    for (std::size_t v = 0; v < e.size(); ++v) {
      if (e[v] < 0 || e[v] > deg_[v]) return std::nullopt;
      idx += static_cast<std::size_t>(e[v]) * stride_[v];
    }
    return idx;
  }
  void check_shape(const TruncatedSeries& o) const {
    if (vars_ != o.vars_ || deg_ != o.deg_)
      throw DomainError("TruncatedSeries: incompatible variables or truncation");
  }

  std::vector<std::string> vars_;
  std::vector<int> deg_;
  std::vector<std::size_t> stride_;
  std::vector<C> c_;
};

using RationalSeries = TruncatedSeries<Rational>;
using FloatSeries = TruncatedSeries<double>;

enum class BernoulliSign { plus, minus };

// B_n with B_1 = +1/2 or -1/2.  n <= 64.
Rational bernoulli(int n, BernoulliSign sign = BernoulliSign::minus);

struct RationalPolynomial {
  std::vector<Rational> coeffs;  // ascending powers
  int degree() const;
  double evaluate(double x) const;
};

// Euler-Maclaurin coefficient polynomial P_i(alpha) of the n^{-(1+alpha)} tail:
// (B_i / i!) * (1+alpha)(2+alpha)...(i-1+alpha).
RationalPolynomial em_polynomial(int i, BernoulliSign sign);

// Sum over n >= N (plus) or n > N (minus) of n^{-(1+alpha)}, expanded as
//   N^{-alpha}/alpha + N^{-alpha} * body(1/N, alpha)
// with body = sum_{i=1}^{p} P_i(alpha) z^i.
class EmTail {
 public:
  EmTail(int p, BernoulliSign sign);
  int order() const { return p_; }
  BernoulliSign sign() const { return sign_; }
  const RationalSeries& body() const { return body_; }
  double evaluate(double alpha, double N) const;
  // Periodic-Bernoulli remainder bound 2 zeta(p)/(2 pi)^p * int_N^inf |f^{(p)}|.
  double remainder_bound(double alpha, double N) const;

 private:
  int p_;
  BernoulliSign sign_;
  RationalSeries body_;
};

EmTail em_tail(int p, BernoulliSign sign);

// Asymptotic container for sums of c * log^j(N) / N^{i + k*delta_bar}.
class LogPolySeries {
 public:
  struct Coefficient {
    double value = 0.0;
    std::optional<Rational> exact;
  };
  using Key = std::tuple<int, int, int>;  // (i, k, j)

  explicit LogPolySeries(Rational delta_bar = Rational(0)) : delta_bar_(std::move(delta_bar)) {}

  void add_term(int i, int k, int j, double c);
  void add_term(int i, int k, int j, const Rational& c);
  const Rational& delta_bar() const { return delta_bar_; }
  const std::map<Key, Coefficient>& terms() const { return terms_; }
  double coefficient(int i, int k, int j) const;

  double evaluate(double N) const;
  double term_value(const Key& key, double N) const;
  // Every stored term has j <= k - 1.
  bool in_solution_form() const;
  nlohmann::json to_json() const;

 private:
  Rational delta_bar_;
  std::map<Key, Coefficient> terms_;
};

}  // namespace cfdim
