#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace tubehom::cli {

enum ExitStatus : int {
  kSuccess = 0,
  kIoFailure = 1,
  kValidationError = 2,
  kNumericalFailure = 3,
};

/// Runs one command line (args exclude the program name). Reports go to `out`
/// unless --output is given; diagnostics go to `err`.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tubehom::cli
