#pragma once

#include <stdexcept>
#include <string>

namespace heavytail {

// Invalid argument or malformed specification.
class ParameterError : public std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Mathematical precondition violated (non-stationary parameters, x outside
// the support of a CDF, degenerate limit law).
class DomainError : public std::domain_error {
  using std::domain_error::domain_error;
};

// Requested operation is outside the supported model class.
class UnsupportedError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A statistical estimate could not be formed from the data given.
class EstimationError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Numerical result failed an internal consistency check.
class NumericError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Quadrature self-check disagreed beyond tolerance.
class PrecisionError : public NumericError {
  using NumericError::NumericError;
};

// Bracket search exhausted its range without finding a root.
class NoRootError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace heavytail
