#pragma once

#include <array>
#include <cmath>
#include <cstddef>

#include "cfdim/errors.hpp"

namespace cfdim {

// Truncated Taylor polynomial c[0] + c[1] e + ... + c[n] e^n in one small
// parameter e.  Used to carry derivatives with respect to the exponent
// through the tail sums without writing each derivative by hand.
class Jet {
 public:
  static constexpr int kMaxOrder = 10;

  Jet() = default;
  Jet(double value, int order) : n_(order) {
    if (order < 0 || order > kMaxOrder) throw DomainError("Jet: order out of range");
    c_[0] = value;
  }
  static Jet variable(double value, int order) {
    Jet j(value, order);
    if (order >= 1) j.c_[1] = 1.0;
    return j;
  }

  int order() const { return n_; }
  double operator[](int k) const { return c_[static_cast<std::size_t>(k)]; }
  double& operator[](int k) { return c_[static_cast<std::size_t>(k)]; }
  double value() const { return c_[0]; }

  Jet& operator+=(const Jet& o) {
    for (int k = 0; k <= n_; ++k) c_[k] += o.c_[k];
    return *this;
  }
  Jet& operator-=(const Jet& o) {
    for (int k = 0; k <= n_; ++k) c_[k] -= o.c_[k];
    return *this;
  }
  Jet& operator+=(double a) {
    c_[0] += a;
    return *this;
  }
  Jet& operator*=(double a) {
    for (int k = 0; k <= n_; ++k) c_[k] *= a;
    return *this;
  }
  Jet& operator*=(const Jet& o) { return *this = *this * o; }
  Jet& operator/=(const Jet& o) { return *this = *this / o; }

  friend Jet operator+(Jet a, const Jet& b) { return a += b; }
  friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
  friend Jet operator+(Jet a, double b) { return a += b; }
  friend Jet operator+(double b, Jet a) { return a += b; }
  friend Jet operator-(Jet a, double b) { return a += -b; }
  friend Jet operator-(double b, const Jet& a) { return (-a) += b; }
  friend Jet operator*(Jet a, double b) { return a *= b; }
  friend Jet operator*(double b, Jet a) { return a *= b; }
  friend Jet operator/(Jet a, double b) { return a *= 1.0 / b; }
  friend Jet operator-(Jet a) { return a *= -1.0; }

  friend Jet operator*(const Jet& a, const Jet& b) {
    Jet r(0.0, a.n_);
    for (int i = 0; i <= a.n_; ++i) {
      if (a.c_[i] == 0.0) continue;
      for (int j = 0; i + j <= a.n_; ++j) r.c_[i + j] += a.c_[i] * b.c_[j];
    }
    return r;
  }

  friend Jet operator/(const Jet& a, const Jet& b) {
    Jet r(0.0, a.n_);
    for (int k = 0; k <= a.n_; ++k) {
      double s = a.c_[k];
      for (int j = 1; j <= k; ++j) s -= b.c_[j] * r.c_[k - j];
      r.c_[k] = s / b.c_[0];
    }
    return r;
  }
  friend Jet operator/(double a, const Jet& b) { return Jet(a, b.n_) / b; }

  friend Jet exp(const Jet& a) {
    // r' = a' r, coefficientwise.
    Jet r(std::exp(a.c_[0]), a.n_);
    for (int k = 1; k <= a.n_; ++k) {
      double s = 0.0;
      for (int j = 1; j <= k; ++j) s += j * a.c_[j] * r.c_[k - j];
      r.c_[k] = s / k;
    }
    return r;
  }
  friend Jet expm1(const Jet& a) {
    Jet r = exp(a);
    r.c_[0] = std::expm1(a.c_[0]);
    return r;
  }
  friend Jet log(const Jet& a) {
    Jet r(std::log(a.c_[0]), a.n_);
    for (int k = 1; k <= a.n_; ++k) {
      double s = k * a.c_[k];
      for (int j = 1; j < k; ++j) s -= j * r.c_[j] * a.c_[k - j];
      r.c_[k] = s / (k * a.c_[0]);
    }
    return r;
  }
  // base^a for a positive real base.
  friend Jet pow(double base, const Jet& a) { return exp(a * std::log(base)); }

 private:
  int n_ = 0;
  std::array<double, kMaxOrder + 1> c_{};
};

// Uniform helpers so templates can be instantiated with double or Jet.
inline double jet_value(double x) { return x; }
inline double jet_value(const Jet& x) { return x.value(); }
inline double make_like(double, double v) { return v; }
inline Jet make_like(const Jet& like, double v) { return Jet(v, like.order()); }
inline double pow(double base, double e) { return std::pow(base, e); }

}  // namespace cfdim
