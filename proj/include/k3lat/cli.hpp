#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace k3lat {

/// Exit codes of the command-line front end.
enum ExitCode : int {
  kExitOk = 0,
  kExitValidation = 2,
  kExitUsage = 64,
  kExitFile = 66,
};

/// Runs the k3lat command line. args[0] is the program name. Primary output
/// goes to `out` (or --output), errors as JSON to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace k3lat
