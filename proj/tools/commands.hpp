#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace loo::cli {

enum ExitCode : int {
  kSuccess = 0,
  kUsage = 2,
  kInputData = 3,
  kInternal = 4,
};

/// Runs the command line `args` (without the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace loo::cli
