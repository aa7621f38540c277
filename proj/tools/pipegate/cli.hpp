#pragma once
// Command dispatch for the pipegate tool. Kept in a library so tests can drive
// it in-process.

#include <ostream>
#include <string>
#include <vector>

namespace pipegate::cli {

enum ExitCode : int {
    kExitOk = 0,
    kExitRegression = 1,
    kExitUnknownEntity = 2,
    kExitInvalidInput = 3,
};

// args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pipegate::cli
