#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace cfdim {

using Digit = std::uint64_t;

struct FiniteSet {
  std::vector<Digit> elements;  // sorted, distinct
};

// n for lo <= n <= hi (hi absent: unbounded).
struct IntegerRange {
  Digit lo = 1;
  std::optional<Digit> hi;
};

// s_n = sum_k coeffs[k] n^k for n >= from (and n <= to when bounded).
struct PolynomialSequence {
  std::vector<std::int64_t> coeffs;  // ascending
  std::uint64_t from = 1;
  std::optional<std::uint64_t> to;
};

// s_n = a lambda^n (1 + b rho^n).  Fibonacci (a = 1/sqrt5, lambda = phi,
// b = -1, rho = -phi^{-2}) or an exact geometric progression base * ratio^n.
struct QuasiGeometric {
  enum class Kind { fibonacci, geometric } kind = Kind::fibonacci;
  std::uint64_t base = 1;   // geometric only
  std::uint64_t ratio = 2;  // geometric only
  std::uint64_t from = 0;
  std::optional<std::uint64_t> to;

  double a() const;
  double lambda() const;
  double b() const;
  double rho() const;
};

using Component = std::variant<FiniteSet, IntegerRange, PolynomialSequence, QuasiGeometric>;

struct TailDescriptor {
  enum class Decay { polynomial, geometric } decay = Decay::polynomial;
  int degree = 1;        // polynomial
  double leading = 1.0;  // polynomial: c_d
  double ratio = 0.0;    // geometric: lambda
  std::uint64_t start_index = 0;

  // Closed form of the remaining sequence, n >= start_index.
  std::vector<double> poly_coeffs;  // ascending
  double binet_a = 0.0, binet_lambda = 0.0, binet_b = 0.0, binet_rho = 0.0;

  double value_at(std::uint64_t n) const;
};

struct Enumeration {
  std::vector<Digit> explicit_elements;  // sorted
  std::vector<TailDescriptor> tails;     // one per infinite component
};

class Alphabet {
 public:
  Alphabet() = default;
  explicit Alphabet(std::vector<Component> parts, std::string text = {});

  const std::vector<Component>& components() const { return parts_; }
  const std::string& text() const { return text_; }
  bool is_finite() const;
  bool is_empty() const;
  // -infinity for finite alphabets.
  double convergence_abscissa() const;

  // Elements below `min_tail_value` are listed (at most max_explicit per
  // component); infinite components leave a closed-form tail starting at a
  // value no smaller than min_tail_value.
  Enumeration split(double min_tail_value, std::size_t max_explicit = std::size_t{1} << 22) const;

 private:
  std::vector<Component> parts_;
  std::string text_;
};

Alphabet parse_alphabet(const std::string& spec);

// Explicit elements until n^{-2s} < weight_tol, then the tail descriptor.
Enumeration enumerate(const Alphabet& alphabet, double weight_tol, double s);

// All elements of a finite alphabet, or the first `limit` of an infinite one.
std::vector<Digit> first_elements(const Alphabet& alphabet, std::size_t limit);

}  // namespace cfdim
