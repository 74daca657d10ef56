#pragma once

#include <iosfwd>

namespace photodet::cli {

/// Runs one invocation of the command-line tool. Output goes to `out`
/// (unless --out redirects it), diagnostics to `err`. Returns the exit code:
/// 0 success, 1 usage or validation error, 2 refusal.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace photodet::cli
