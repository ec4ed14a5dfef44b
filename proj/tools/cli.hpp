#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace ngc::cli {

/// Exit codes shared by every subcommand.
enum ExitCode : int {
  kOk = 0,
  kError = 1,       ///< usage, I/O or parse failure
  kNotFeasible = 2  ///< solve ended on a fractional or infeasible iterate
};

/// Runs the command line `args` (without the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ngc::cli
