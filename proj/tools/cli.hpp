#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace telegraph::cli {

/// Process exit codes.
enum ExitCode : int {
  kOk = 0,
  kIoError = 1,
  kUsageError = 2,
  kVerificationFailed = 3,
};

/// Runs the front end on `args` (program name excluded) and returns the exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace telegraph::cli
