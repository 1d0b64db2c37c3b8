#include "dynsml/error.hpp"

namespace dynsml {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ArityMismatch: return "ArityMismatch";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::NotInverse: return "NotInverse";
    case ErrorCode::NonConstantJacobian: return "NonConstantJacobian";
    case ErrorCode::ZeroJacobian: return "ZeroJacobian";
    case ErrorCode::ReducibleMinpoly: return "ReducibleMinpoly";
    case ErrorCode::IrreducibilityInconclusive: return "IrreducibilityInconclusive";
    case ErrorCode::UnsupportedPrime: return "UnsupportedPrime";
    case ErrorCode::DenominatorNotUnit: return "DenominatorNotUnit";
    case ErrorCode::NotASimpleRoot: return "NotASimpleRoot";
    case ErrorCode::NonUnitInverse: return "NonUnitInverse";
    case ErrorCode::NoPrimeInRange: return "NoPrimeInRange";
    case ErrorCode::JacobianNotInvertible: return "JacobianNotInvertible";
    case ErrorCode::ValuationBoundViolated: return "ValuationBoundViolated";
    case ErrorCode::PrecisionExhausted: return "PrecisionExhausted";
    case ErrorCode::Inconclusive: return "Inconclusive";
    case ErrorCode::InternalContradiction: return "InternalContradiction";
    case ErrorCode::DegenerateRecurrence: return "DegenerateRecurrence";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message, long detail)
    : std::runtime_error(std::string(to_string(code)) + ": " + message),
      code_(code),
      detail_(detail) {}

void fail(ErrorCode code, const std::string& message, long detail) {
  throw Error(code, message, detail);
}

}  // namespace dynsml
