#include "bpgeom/error.hpp"

namespace bp {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::UnsupportedDimension: return "UnsupportedDimension";
    case ErrorCode::ModelDomainError: return "ModelDomainError";
    case ErrorCode::SymmetryError: return "SymmetryError";
    case ErrorCode::PositivityError: return "PositivityError";
    case ErrorCode::ParameterOutOfRange: return "ParameterOutOfRange";
    case ErrorCode::ToleranceNotReached: return "ToleranceNotReached";
    case ErrorCode::AntipodalPair: return "AntipodalPair";
    case ErrorCode::PointOutsideModel: return "PointOutsideModel";
    case ErrorCode::NotStarShapedFromOffset: return "NotStarShapedFromOffset";
    case ErrorCode::InsufficientStencil: return "InsufficientStencil";
    case ErrorCode::DegreeOverflow: return "DegreeOverflow";
    case ErrorCode::UnsupportedOrder: return "UnsupportedOrder";
    case ErrorCode::UnsupportedBody: return "UnsupportedBody";
    case ErrorCode::EpsilonTooLarge: return "EpsilonTooLarge";
    case ErrorCode::NegativityNotFound: return "NegativityNotFound";
    case ErrorCode::UnsupportedFormat: return "UnsupportedFormat";
  }
  return "Unknown";
}

bool is_numerical_failure(ErrorCode code) {
  switch (code) {
    case ErrorCode::ToleranceNotReached:
    case ErrorCode::NegativityNotFound:
    case ErrorCode::EpsilonTooLarge:
    case ErrorCode::NotStarShapedFromOffset:
    case ErrorCode::DegreeOverflow:
      return true;
    default:
      return false;
  }
}

void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace bp
