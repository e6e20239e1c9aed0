#pragma once

#include <stdexcept>
#include <string>

namespace cfdim {

// Malformed input: bad alphabet strings, out-of-range parameters.
struct ParseError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Requested a sum at or below the convergence abscissa.
struct DivergentSumError : NumericalError {
  using NumericalError::NumericalError;
};

// Misuse of an API contract (grid mismatch, singular evaluation point, ...).
struct DomainError : std::logic_error {
  using std::logic_error::logic_error;
};

}  // namespace cfdim
