#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace egyptsum {

/// Exit codes of the command-line front end.
enum ExitCode : int { kExitOk = 0, kExitError = 1, kExitNotFound = 2 };

/// Runs one command. `args` excludes the program name. Records go to `out`
/// as JSON lines, diagnostics to `err`; the config is read from `in` when no
/// path (or "-") is given.
int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace egyptsum
