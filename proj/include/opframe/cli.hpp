#pragma once

// Command-line entry point, callable in-process so tests can drive it.

#include <ostream>
#include <string>
#include <vector>

namespace opframe {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitHypothesis = 2;
inline constexpr int kExitEnclosure = 3;

/// Reports go to `out`, diagnostics to `err`. Returns the process exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace opframe
