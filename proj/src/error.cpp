#include "filling/error.hpp"

namespace filling {

std::string_view error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::DegenerateInput: return "DegenerateInput";
    case ErrorCode::OnCircle: return "OnCircle";
    case ErrorCode::CoincidentPoints: return "CoincidentPoints";
    case ErrorCode::ZeroNormal: return "ZeroNormal";
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::ResolutionTooLow: return "ResolutionTooLow";
    case ErrorCode::NotInvariant: return "NotInvariant";
    case ErrorCode::FootprintOutsidePolygon: return "FootprintOutsidePolygon";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::NotAnosov: return "NotAnosov";
    case ErrorCode::DegenerateSegment: return "DegenerateSegment";
    case ErrorCode::NegativeRadius: return "NegativeRadius";
    case ErrorCode::NonpositiveVolume: return "NonpositiveVolume";
    case ErrorCode::NonpositiveEpsilon: return "NonpositiveEpsilon";
    case ErrorCode::LambdaOutOfRange: return "LambdaOutOfRange";
    case ErrorCode::GenusTooSmall: return "GenusTooSmall";
  }
  return "Unknown";
}

} // namespace filling
