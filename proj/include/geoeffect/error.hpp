#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace geoeffect {

enum class ErrorCode {
  InvalidArgument,
  SpacingTooCoarse,
  NonConvexDomain,
  NotPositiveDefinite,
  GridMismatch,
  EmptyInterior,
  NotRefining,
  AllMasked,
  IncompatibleSource,
  UnsupportedMetric,
  DomainTooSmall,
  CFLViolation,
  NumericalBlowup,
  DegenerateMetric,
  MalformedInput,
  ConfigInvalid,
};

std::string_view to_string(ErrorCode code);

// Every recoverable failure in the library is reported through this type; the
// code lets callers (the CLI in particular) map failures to exit statuses.
class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

private:
  ErrorCode code_;
};

}  // namespace geoeffect
