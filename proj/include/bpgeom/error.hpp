#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace bp {

enum class ErrorCode {
  InvalidArgument,
  ParseError,
  IoError,
  DimensionMismatch,
  UnsupportedDimension,
  ModelDomainError,
  SymmetryError,
  PositivityError,
  ParameterOutOfRange,
  ToleranceNotReached,
  AntipodalPair,
  PointOutsideModel,
  NotStarShapedFromOffset,
  InsufficientStencil,
  DegreeOverflow,
  UnsupportedOrder,
  UnsupportedBody,
  EpsilonTooLarge,
  NegativityNotFound,
  UnsupportedFormat,
};

std::string_view error_code_name(ErrorCode code);

// Failures of the numerics themselves, as opposed to bad input.
bool is_numerical_failure(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& message);

}  // namespace bp
