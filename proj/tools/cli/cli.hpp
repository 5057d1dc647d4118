#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace uareg::cli {

inline constexpr int kExitPass = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitUsage = 2;

/// Runs one command. args excludes the program name. The report goes to
/// --out when given, otherwise to out; diagnostics go to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace uareg::cli
