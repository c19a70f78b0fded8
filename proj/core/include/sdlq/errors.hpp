#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace sdlq {

enum class ErrorCode {
  DimensionMismatch,
  NotPSD,
  NotPD,
  InvalidInterval,
  DurationMismatch,
  NonPositiveDuration,
  NonFinite,
  NodeMismatch,
  TNotPD,
  IndexOutOfRange,
  TooLarge,
  QpNotPD,
  MissingReference,
  UnknownProblem,
  InvalidInput,
};

std::string_view to_string(ErrorCode code);

/// True for failures of the numerics (as opposed to bad input data).
bool is_numerical(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace sdlq
