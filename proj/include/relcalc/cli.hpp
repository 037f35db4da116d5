#pragma once

#include <iosfwd>

namespace relcalc {

/// Exit codes of the command-line tool.
enum ExitCode : int {
    exit_ok = 0,
    exit_check_failed = 1,
    exit_parse = 2,
    exit_precondition = 3,
    exit_bound = 4,
};

/// Runs `relcalc` with the given arguments (argv[0] is the program name).
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace relcalc
