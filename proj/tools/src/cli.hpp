#pragma once

#include <ostream>

namespace geodid::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalidInput = 2;
inline constexpr int kExitEstimation = 3;

/// Entry point of the `geodid` tool; result JSON goes to `out`, diagnostics
/// (including the error JSON on failure) to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace geodid::cli
