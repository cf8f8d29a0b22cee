#pragma once

#include <iosfwd>

namespace cauchycorr::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitUsage = 2;

/// Entry point of the cauchy_corr tool. Subcommands: eval, simulate,
/// verify, plot. Returns the process exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace cauchycorr::cli
