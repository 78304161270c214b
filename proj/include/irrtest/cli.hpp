#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace irrtest::cli {

enum ExitCode : int {
  kSuccess = 0,
  kUsageError = 1,
  kInfeasible = 2,
  kReducible = 3,
};

/// Runs one command. `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace irrtest::cli
