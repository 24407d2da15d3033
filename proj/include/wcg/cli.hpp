#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace wcg {

enum ExitCode : int {
  kExitOk = 0,
  kExitVerificationFailed = 1,
  kExitInputError = 2,
  kExitBudgetExceeded = 3,
  kExitBoundViolated = 4,
};

/// Runs one command line (without the program name). Output is JSON or CSV
/// on `out`; diagnostics go to `err`.
int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace wcg
