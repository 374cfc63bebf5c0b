#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace gmtforms {

// Runs the command-line interface on the given arguments (program name
// excluded). Returns the process exit code: 0 on success, 1 when a
// computation or verification fails, 2 on usage errors.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gmtforms
