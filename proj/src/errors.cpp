#include "gkz/errors.hpp"

namespace gkz {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::IncompatibleTruncation: return "IncompatibleTruncation";
    case ErrorCode::BadMatrix: return "BadMatrix";
    case ErrorCode::NonIntegerX2Exponent: return "NonIntegerX2Exponent";
    case ErrorCode::NonNaturalExponent: return "NonNaturalExponent";
    case ErrorCode::TooFewTerms: return "TooFewTerms";
    case ErrorCode::ResonantTerm: return "ResonantTerm";
    case ErrorCode::NotInTargetStratum: return "NotInTargetStratum";
    case ErrorCode::ResonantClass: return "ResonantClass";
    case ErrorCode::NonGevreyInput: return "NonGevreyInput";
    case ErrorCode::BoxTooSmall: return "BoxTooSmall";
    case ErrorCode::InconclusiveGevreyFit: return "InconclusiveGevreyFit";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::ConstraintError: return "ConstraintError";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace gkz
