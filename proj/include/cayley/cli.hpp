#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cayley {

/// Exit statuses of the command-line tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitInvalidInput = 1,
  kExitNotSlotBounded = 2,
  kExitResourceCap = 3,
  kExitMismatch = 4,  // verify found a disagreement
};

/// Runs the cperm command line. `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cayley
