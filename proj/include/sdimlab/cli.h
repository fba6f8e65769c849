#pragma once

#include <ostream>

namespace sdimlab {

/// Exit codes of the command-line tool.
enum ExitCode : int {
    kExitOk = 0,
    kExitVerifyFailed = 1,
    kExitParse = 2,
    kExitCrossing = 3,
    kExitBudget = 4,
    kExitTooFewScales = 5,
};

/// Runs one `sdimlab` command line. Errors are reported on `err` as
/// "error: <Tag>: <message>".
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace sdimlab
