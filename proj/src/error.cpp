#include "permind/error.hpp"

namespace permind {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::ColorOutOfRange: return "ColorOutOfRange";
    case ErrorCode::RepeatedColor: return "RepeatedColor";
    case ErrorCode::ConfigMismatch: return "ConfigMismatch";
    case ErrorCode::AlreadyFixed: return "AlreadyFixed";
    case ErrorCode::ColorAlreadyUsed: return "ColorAlreadyUsed";
    case ErrorCode::InconsistentFeedback: return "InconsistentFeedback";
    case ErrorCode::NoActiveIndex: return "NoActiveIndex";
    case ErrorCode::InternalInvariantViolation: return "InternalInvariantViolation";
    case ErrorCode::MalformedAnswer: return "MalformedAnswer";
    case ErrorCode::AnswerOutOfRange: return "AnswerOutOfRange";
    case ErrorCode::StreamClosed: return "StreamClosed";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::CapExceeded: return "CapExceeded";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

}  // namespace permind
