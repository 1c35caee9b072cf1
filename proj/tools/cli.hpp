#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace freeembed::cli {

/// Exit codes: 0 success, 1 internal error, 2 usage or configuration error,
/// 3 verification failure.
enum ExitCode : int { ok = 0, internal_error = 1, usage_error = 2, verification_failed = 3 };

/// Runs the command line `args` (without the program name).
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace freeembed::cli
