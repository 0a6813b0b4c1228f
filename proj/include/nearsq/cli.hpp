#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "nearsq/error.hpp"

namespace nearsq::cli {

enum ExitCode : int {
  kOk = 0,
  kFailure = 1,  // I/O and anything unexpected
  kUsage = 2,
  kInvalidArgument = 3,
  kRange = 4,
  kRegime = 5,
  kBudget = 6,
  kAccuracy = 7,
  kCoverage = 8,
};

int exit_code(ErrorKind kind) noexcept;

// Runs one command line (without the program name). The report goes to
// `out` or to the --output file; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace nearsq::cli
