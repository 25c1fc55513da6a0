#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ridgelab::cli {

enum ExitCode : int {
    exit_ok = 0,
    exit_io = 1,
    exit_invalid = 2,
    exit_no_ridge = 3,
};

/// Runs the command line (args[0] is the program name) and returns the exit
/// code. Reports go to out, errors to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ridgelab::cli
