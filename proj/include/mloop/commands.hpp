#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace mloop {

/// Runs one CLI command (args exclude the program name) and writes the
/// report to `out`.  Returns the process exit code: 0 for success or a true
/// verdict, 1 for a clean false verdict, 2 for input errors.
int run_command(const std::vector<std::string>& args, std::ostream& out);

}  // namespace mloop
