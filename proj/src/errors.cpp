#include "volsamp/errors.hpp"

namespace volsamp {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::SingularMatrix: return "SingularMatrix";
    case ErrorCode::DenominatorVanishes: return "DenominatorVanishes";
    case ErrorCode::NumericBreakdown: return "NumericBreakdown";
    case ErrorCode::TooManySubsets: return "TooManySubsets";
    case ErrorCode::RankDeficient: return "RankDeficient";
    case ErrorCode::RangeError: return "RangeError";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

}  // namespace volsamp
