#pragma once

#include <stdexcept>
#include <string>

namespace propsp {

enum class ErrorKind {
  NotPositiveDefinite,
  NormCapViolated,
  DimMismatch,
  NonIdentityWeightForTrace,
  NotComplementary,
  DependentInput,
  BiorthogonalityViolated,
  NotIdempotent,
  RangeOverlap,
  ContourTooClose,
  NotIsolated,
  SingularSystem,
  BadExponent,
  InvalidArgument,
  ParseError,
  IoFailure,
  PostconditionFailed,
};

const char* to_string(ErrorKind kind) noexcept;

/// Library-wide exception. Every failure path carries a kind so callers
/// (and the CLI exit-code mapping) can branch without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

  /// True for kinds caused by bad input rather than a failed numerical check.
  bool is_usage_error() const noexcept;

 private:
  ErrorKind kind_;
};

}  // namespace propsp
