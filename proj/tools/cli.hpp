#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace stablereg::cli {

/// Runs the command line `args` (without the program name). Data goes to
/// files or `out`; diagnostics to `err`. Returns the process exit status.
int run(std::vector<std::string> args, std::ostream& out, std::ostream& err);

}  // namespace stablereg::cli
