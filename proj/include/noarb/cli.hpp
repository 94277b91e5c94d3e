#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace noarb::cli {

inline constexpr int kHolds = 0;
inline constexpr int kFails = 1;
inline constexpr int kInvalid = 2;

/// Runs one command line; `args` excludes the program name.
/// Subcommands: check, transform, parity, generate.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace noarb::cli
