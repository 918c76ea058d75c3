#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace filling {

// Every domain failure raised by the library carries one of these codes; the
// CLI reports the code name verbatim in its JSON error record.
enum class ErrorCode {
  InvalidArgument,
  DegenerateInput,
  OnCircle,
  CoincidentPoints,
  ZeroNormal,
  EmptyInput,
  ResolutionTooLow,
  NotInvariant,
  FootprintOutsidePolygon,
  ParseError,
  NotAnosov,
  DegenerateSegment,
  NegativeRadius,
  NonpositiveVolume,
  NonpositiveEpsilon,
  LambdaOutOfRange,
  GenusTooSmall,
};

std::string_view error_name(ErrorCode code);

class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }
  std::string_view name() const { return error_name(code_); }

private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

} // namespace filling
