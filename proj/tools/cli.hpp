#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace walkrank::cli {

/// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInternal = 1;
/// Usage, parse and input errors.
inline constexpr int kExitInput = 2;
/// Convergence, reachability, connectivity and sampling failures.
inline constexpr int kExitNumerical = 3;

/// Runs one subcommand; `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace walkrank::cli
