#pragma once

#include <stdexcept>
#include <string>

namespace mixagg {

// Parameter or argument outside the documented domain.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Argument list has the wrong length for the requested evaluation.
class DimensionMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// The operation has no implementation for this mixing law or model.
class Unsupported : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Base for failures that come from the mathematics rather than the caller's
// input shape: divergent moments, underflowing tails, capped derivative order.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NonexistentMoment : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class DerivativeCapExceeded : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class TailUnderflow : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class QuadratureFailure : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

}  // namespace mixagg
