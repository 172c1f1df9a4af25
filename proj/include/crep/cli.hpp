#pragma once

// Command-line front end. Exit codes: 0 success, 1 verification or
// certification failure (and unreadable inputs), 2 usage error.

#include <ostream>
#include <string>
#include <vector>

namespace crep::cli {

/// `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace crep::cli
