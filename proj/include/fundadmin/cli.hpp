#pragma once

#include <ostream>
#include <span>
#include <string>

namespace fundadmin {

/// Exit codes of the command-line tool.
enum ExitCode : int { kExitOk = 0, kExitDomain = 1, kExitIo = 2 };

/// Runs one CLI invocation. `args` excludes the program name. Results go to
/// `out` (or the --out file); diagnostics only ever go to `err`.
int run_cli(std::span<const std::string> args, std::ostream& out, std::ostream& err);

}  // namespace fundadmin
