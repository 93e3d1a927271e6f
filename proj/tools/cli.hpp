#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace flowpoly::cli {

enum ExitCode : int {
  kOk = 0,
  kIdentityFailure = 1,
  kUsage = 2,
  kResourceCap = 3,
  kInternal = 4,
};

// Runs one command line (without the program name). Reports go to `out`;
// diagnostics go to `err`. Returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace flowpoly::cli
