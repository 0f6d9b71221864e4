#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace lbentropy {

inline constexpr int exit_ok = 0;
inline constexpr int exit_usage = 2;      // bad flags, config or data
inline constexpr int exit_numerical = 3;  // a numerical procedure failed

/// Entry point of the `lbentropy` tool. args excludes the program name.
/// Subcommands: simulate, estimate, fit, sample, true-entropy.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lbentropy
