#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace wdd::cli {

/// Full command line entry point. Exit codes: 0 success, 1 check failure, 2 usage or config error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, char** argv);

}  // namespace wdd::cli
