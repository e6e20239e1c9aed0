#include "cfdim/rational.hpp"

#include "cfdim/errors.hpp"

namespace cfdim {

std::string to_fraction_string(const Rational& r) {
  return boost::multiprecision::numerator(r).str() + "/" +
         boost::multiprecision::denominator(r).str();
}

Rational parse_fraction(const std::string& s) {
  try {
    auto slash = s.find('/');
    if (slash == std::string::npos) return Rational(BigInt(s));
    BigInt p(s.substr(0, slash));
    BigInt q(s.substr(slash + 1));
    if (q == 0) throw ParseError("zero denominator in '" + s + "'");
    return Rational(p, q);
  } catch (const std::runtime_error&) {
    throw ParseError("not a fraction: '" + s + "'");
  }
}

double to_double(const Rational& r) { return r.convert_to<double>(); }

Rational factorial(unsigned n) {
  BigInt f = 1;
  for (unsigned k = 2; k <= n; ++k) f *= k;
  return Rational(f);
}

Rational binomial(unsigned n, unsigned k) {
  if (k > n) return Rational(0);
  BigInt b = 1;
  for (unsigned i = 0; i < k; ++i) {
    b *= (n - i);
    b /= (i + 1);
  }
  return Rational(b);
}

Rational pow(const Rational& r, int e) {
  if (e < 0) return Rational(1) / pow(r, -e);
  Rational out(1), base(r);
  while (e) {
    if (e & 1) out *= base;
    base *= base;
    e >>= 1;
  }
  return out;
}

}  // namespace cfdim
