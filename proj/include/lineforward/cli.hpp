#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace lineforward {

// Entry point of the lineforward tool, factored out of main() so tests can
// drive it in-process. `args` excludes the program name. Returns the exit
// code: 0 success, 1 usage or validation failure, 2 result truncated by a
// search budget (still printed, marked inexact).
int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err);

}  // namespace lineforward
