#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace splp::cli {

enum ExitCode : int { kSuccess = 0, kUsage = 1, kRuntime = 2 };

/// Runs one `splp` invocation. `args` excludes the program name.
/// Returns 0 on success, 1 on a usage error, 2 on a runtime error.
int cli_dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace splp::cli
