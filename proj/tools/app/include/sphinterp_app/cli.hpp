#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace sphinterp::app {

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitBadInput = 2;

/// Entry point of the `sphinterp` tool. `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sphinterp::app
