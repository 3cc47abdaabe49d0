#include "propsp/error.hpp"

namespace propsp {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::NotPositiveDefinite: return "NotPositiveDefinite";
    case ErrorKind::NormCapViolated: return "NormCapViolated";
    case ErrorKind::DimMismatch: return "DimMismatch";
    case ErrorKind::NonIdentityWeightForTrace: return "NonIdentityWeightForTrace";
    case ErrorKind::NotComplementary: return "NotComplementary";
    case ErrorKind::DependentInput: return "DependentInput";
    case ErrorKind::BiorthogonalityViolated: return "BiorthogonalityViolated";
    case ErrorKind::NotIdempotent: return "NotIdempotent";
    case ErrorKind::RangeOverlap: return "RangeOverlap";
    case ErrorKind::ContourTooClose: return "ContourTooClose";
    case ErrorKind::NotIsolated: return "NotIsolated";
    case ErrorKind::SingularSystem: return "SingularSystem";
    case ErrorKind::BadExponent: return "BadExponent";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::IoFailure: return "IoFailure";
    case ErrorKind::PostconditionFailed: return "PostconditionFailed";
  }
  return "Unknown";
}

bool Error::is_usage_error() const noexcept {
  switch (kind_) {
    case ErrorKind::PostconditionFailed:
    case ErrorKind::IoFailure:
      return false;
    default:
      return true;
  }
}

}  // namespace propsp
