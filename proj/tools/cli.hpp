#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace dlkit {

/// Runs the command line `args` (without the program name). Returns the exit code:
/// 0 success, 1 diagnostics, 2 usage.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dlkit
