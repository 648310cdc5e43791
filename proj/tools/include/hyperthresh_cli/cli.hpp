#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hyperthresh::cli {

/// Exit codes of the command-line tool.
enum ExitCode : int {
  kOk = 0,
  kCheckFailed = 1,
  kInputError = 2,
  kBudget = 3,
  kInfeasible = 4,
};

/// Runs one invocation; `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hyperthresh::cli
