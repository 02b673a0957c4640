#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cqed::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitNumerical = 2,
  kExitBoundViolation = 3,
};

// Entry point behind the `cqed` executable. `args` excludes the program name.
// Reports go to `out`; errors are a single "cqed: error: <Kind>: <detail>"
// line on `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cqed::cli
