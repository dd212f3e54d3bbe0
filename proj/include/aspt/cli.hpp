#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace aspt {

/// Runs the command-line front end. Returns the process exit code:
/// 0 on success (solve: satisfiable, validate: all checks passed),
/// 1 for an unsatisfiable program or a failed check, 2 on errors.
/// Diagnostics go to `err` only.
int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
            std::ostream& err);

}  // namespace aspt
