#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cy3 {

// Runs the command line (args excludes the program name). Returns the process exit code:
// 0 success, 1 domain or validation error (JSON diagnostic on err), 2 usage error.
int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace cy3
