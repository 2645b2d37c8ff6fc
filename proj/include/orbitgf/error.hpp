#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace orbitgf {

enum class ErrorCode {
  NotAssociative,
  NoIdentity,
  NoInverse,
  NotClosed,
  MalformedPresentation,
  InconsistentPresentation,
  NotAutomorphism,
  NotAHomomorphism,
  NotSimpleIntegerPoles,
  NonIntegralSolution,
  RecursionDepthExceeded,
  ParameterOutOfRange,
  TooLarge,
  SpecParse,
  Parse,
  Unavailable,
};

std::string_view to_string(ErrorCode code);

/// Every recoverable failure in the library is reported as an Error carrying
/// a machine-readable code; the message names the offending triple, element,
/// relation or JSON path.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace orbitgf
