#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace oim::cli {

enum ExitCode : int { kSolved = 0, kUnsolved = 1, kError = 2 };

/// Runs the command line `args` (args[0] is the program name). Normal output
/// goes to `out`, diagnostics to `err`. Returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace oim::cli
