#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace alphaembed {

// Base for every library failure. The CLI maps subclasses onto exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Inputs outside an operation's mathematical domain.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Geometry that the requested construction cannot handle (parallel
// diagonals, three aligned points, coincident foci, ...).
class DegenerateError : public Error {
 public:
  using Error::Error;
};

// The caller broke a documented precondition.
class ContractError : public Error {
 public:
  using Error::Error;
};

// A numeric search left its admissible range or failed to converge.
class NumericRangeError : public Error {
 public:
  using Error::Error;
};

// Evaluation at a point where the function is singular.
class SingularityError : public Error {
 public:
  using Error::Error;
};

class EmptyCurveError : public Error {
 public:
  using Error::Error;
};

// Failure inside a multi-stage pipeline; `stage()` names the stage.
class StageError : public Error {
 public:
  StageError(std::string stage, const std::string& what)
      : Error(stage + ": " + what), stage_(std::move(stage)) {}
  const std::string& stage() const noexcept { return stage_; }

 private:
  std::string stage_;
};

}  // namespace alphaembed
