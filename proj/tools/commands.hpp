#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace mbarrier::cli {

enum ExitCode : int {
    kPass = 0,
    kCheckFailed = 1,
    kInputError = 2,
};

/// Runs the command line `args` (without the program name). JSON reports go
/// to `out`, diagnostics and timing to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mbarrier::cli
