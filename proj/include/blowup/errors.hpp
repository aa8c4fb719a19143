#pragma once

#include <stdexcept>
#include <string>

namespace blowup {

// Root of every numerical failure raised by the library.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DomainError : public NumericError {
 public:
  using NumericError::NumericError;
};

// Argument sits on a pole of a gamma or digamma factor.
class PoleError : public DomainError {
 public:
  using DomainError::DomainError;
};

class OverflowError : public NumericError {
 public:
  using NumericError::NumericError;
};

// A quadrature or series could not certify the requested accuracy.
class ToleranceError : public NumericError {
 public:
  using NumericError::NumericError;
};

class BracketError : public NumericError {
 public:
  using NumericError::NumericError;
};

class ConvergenceError : public NumericError {
 public:
  using NumericError::NumericError;
};

// Amplitude equation has no admissible solution (Q not real positive).
class MatchError : public NumericError {
 public:
  using NumericError::NumericError;
};

// Requested point is incompatible with the sample grid or stencil.
class GridError : public NumericError {
 public:
  using NumericError::NumericError;
};

}  // namespace blowup
