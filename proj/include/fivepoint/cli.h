#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fivepoint {

// Exit codes of the command-line front end.
enum ExitCode : int {
  kExitOk = 0,
  kExitFailure = 1,  // parse or I/O error
  kExitUsage = 2,
  kExitSolverFailure = 3,
};

// Runs the `fivepoint` command line. `args` excludes the program name.
// Result documents go to `out`; diagnostics, as JSON, to `err`.
int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err);

}  // namespace fivepoint
