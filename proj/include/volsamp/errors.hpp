#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace volsamp {

enum class ErrorCode {
  IndexOutOfRange,
  SingularMatrix,
  DenominatorVanishes,
  NumericBreakdown,
  TooManySubsets,
  RankDeficient,
  RangeError,
  DimensionMismatch,
  ParseError,
};

std::string_view to_string(ErrorCode code) noexcept;

// Every failure raised by the library carries one of the codes above so the
// CLI can map it to an exit status without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace volsamp
