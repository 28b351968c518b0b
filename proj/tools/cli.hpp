#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace poptree::cli {

// Runs one command line (args exclude the program name). Exit codes:
// 0 ok, 1 runtime/input error, 2 usage error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace poptree::cli
