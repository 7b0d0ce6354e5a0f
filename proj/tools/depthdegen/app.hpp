#pragma once

#include <ostream>

namespace depthdegen::cli {

/// Exit codes of the command-line tool.
enum ExitCode : int {
    kExitOk = 0,
    kExitFailure = 1,     // I/O errors, replay mismatches, anything unexpected
    kExitValidation = 2,  // bad arguments or inputs
    kExitNumeric = 3,     // NaN or other numerical breakdown
};

/// Whole command-line front end; main() forwards to this so tests can drive
/// it in-process.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace depthdegen::cli
