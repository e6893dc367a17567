#pragma once

#include <stdexcept>
#include <string>

namespace dampedwave {

// Error taxonomy. The CLI maps these onto exit codes:
//   InvalidInput -> 1, NumericalError -> 2, IoError -> 3.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidInput : public Error {
 public:
  using Error::Error;
};

class NumericalError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

// Evaluation point lies outside the admissible domain (e.g. outside the
// light cone |x| < 1+t, or z outside [0,1)).
class DomainError : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

// Parameter combination is structurally invalid (e.g. c a nonpositive
// integer in a hypergeometric triple).
class InvalidParams : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

// Series exhausted max_terms before reaching the requested tolerance.
class NoConvergence : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

// The admissible exponent window is empty; parameters lie outside the
// blowup regime.
class EmptySetError : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

// A lifespan bound was requested for parameters the theory does not cover.
class OutsideTheoremError : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

class GridTooCoarse : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

// A quantity that must be positive under the stated hypotheses came out
// nonpositive; signals a quadrature or parameter bug.
class PositivityViolated : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

// Requested a bound-regime classification at or outside the covered
// parameter windows.
class WrongRegime : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

// NaN or Inf encountered mid-computation.
class NonFinite : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class InsufficientData : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

// An ODE run hit its horizon cap without blowing up.
class NoBlowup : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

}  // namespace dampedwave
