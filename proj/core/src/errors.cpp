#include "sdlq/errors.hpp"

namespace sdlq {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NotPSD: return "NotPSD";
    case ErrorCode::NotPD: return "NotPD";
    case ErrorCode::InvalidInterval: return "InvalidInterval";
    case ErrorCode::DurationMismatch: return "DurationMismatch";
    case ErrorCode::NonPositiveDuration: return "NonPositiveDuration";
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::NodeMismatch: return "NodeMismatch";
    case ErrorCode::TNotPD: return "TNotPD";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::QpNotPD: return "QpNotPD";
    case ErrorCode::MissingReference: return "MissingReference";
    case ErrorCode::UnknownProblem: return "UnknownProblem";
    case ErrorCode::InvalidInput: return "InvalidInput";
  }
  return "Unknown";
}

bool is_numerical(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonFinite:
    case ErrorCode::NodeMismatch:
    case ErrorCode::TNotPD:
    case ErrorCode::QpNotPD:
      return true;
    default:
      return false;
  }
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

}  // namespace sdlq
