#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace dynsml {

enum class ErrorCode {
  InvalidArgument,
  ArityMismatch,
  ParseError,
  NotInverse,
  NonConstantJacobian,
  ZeroJacobian,
  ReducibleMinpoly,
  IrreducibilityInconclusive,
  UnsupportedPrime,
  DenominatorNotUnit,
  NotASimpleRoot,
  NonUnitInverse,
  NoPrimeInRange,
  JacobianNotInvertible,
  ValuationBoundViolated,
  PrecisionExhausted,
  Inconclusive,
  InternalContradiction,
  DegenerateRecurrence,
};

std::string_view to_string(ErrorCode code);

// Every failure raised by the library. `detail` carries an optional integer
// payload (the offending Mahler index for ValuationBoundViolated, etc).
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message, long detail = -1);

  ErrorCode code() const noexcept { return code_; }
  long detail() const noexcept { return detail_; }

 private:
  ErrorCode code_;
  long detail_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& message, long detail = -1);

}  // namespace dynsml
