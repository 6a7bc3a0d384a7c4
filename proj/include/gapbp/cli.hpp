#pragma once

namespace gapbp {

// Exit codes shared by the command-line front end.
inline constexpr int kExitOptimal = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitFeasible = 2;
inline constexpr int kExitInfeasible = 3;
inline constexpr int kExitAborted = 4;

/// Dispatches the `generate`, `solve`, `campaign`, and `dynamic` subcommands.
int run_cli(int argc, const char* const* argv);

}  // namespace gapbp
