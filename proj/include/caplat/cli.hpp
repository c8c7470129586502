#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace caplat {

// Runs one command line (argv[0] excluded). Returns the exit code:
// 0 success, 1 domain error, 2 usage or parse error.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace caplat
