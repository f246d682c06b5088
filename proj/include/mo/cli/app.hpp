#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace mo::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailed = 1;  ///< selftest found a failing criterion
inline constexpr int kExitInput = 2;
inline constexpr int kExitBracket = 3;

/// Runs `mo <args...>` (args excludes the program name) and returns the exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mo::cli
