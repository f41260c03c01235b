#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace volsamp::cli {

enum ExitCode : int {
  kSuccess = 0,
  kVerificationFailed = 1,
  kInputError = 2,
  kNumericBreakdown = 3,
};

/// Runs one command line (args excludes the program name). The JSON report
/// goes to `out`, diagnostics to `err`. Returns the process exit status.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace volsamp::cli
