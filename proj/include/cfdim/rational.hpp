#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>

namespace cfdim {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Always "p/q", including q == 1.
std::string to_fraction_string(const Rational& r);
// Accepts "p/q" or a bare integer.
Rational parse_fraction(const std::string& s);
double to_double(const Rational& r);

Rational factorial(unsigned n);
Rational binomial(unsigned n, unsigned k);
Rational pow(const Rational& r, int e);

}  // namespace cfdim
