#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace canontop::cli {

inline constexpr int kExitPass = 0;
inline constexpr int kExitFailed = 1;
inline constexpr int kExitUsage = 2;

/// Runs one command (args excludes the program name). The JSON report goes
/// to `out`, a one-line summary and any error to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace canontop::cli
