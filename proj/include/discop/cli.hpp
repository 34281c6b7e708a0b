#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace discop {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitConsistency = 3;
inline constexpr int kExitNotNormal = 4;
inline constexpr int kExitNotBijective = 5;

/// Command-line entry point; `args` excludes the program name. All output
/// goes through the given streams so tests can capture it.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace discop
