#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace trachtenberg::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

/// Runs one CLI invocation. `args` excludes the program name. Results go to
/// `out`; one-line diagnostics to `err`. Returns 0 on success, 2 for usage
/// errors (unknown command or flag, unsupported multiplier) and 1 for
/// failures reported by the engine.
int execute_command(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
                    std::ostream& err);

}  // namespace trachtenberg::cli
