#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace betacalc::cli {

enum ExitCode : int {
  exit_ok = 0,
  exit_violated = 1,
  exit_input_error = 2,
  exit_not_converged = 3,
};

/// Runs the command line `args` (without the program name), writing results
/// to `out` and diagnostics to `err`. Returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace betacalc::cli
