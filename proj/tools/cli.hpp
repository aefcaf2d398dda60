#pragma once

#include <ostream>

namespace nambu::cli {

// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitViolation = 1;
inline constexpr int kExitInputError = 2;

/// Runs `nambu <subcommand> ...` writing reports to `out` and diagnostics to
/// `err`. Subcommands: verify, admissible, transform, simulate, derive.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace nambu::cli
