#pragma once

#include <ostream>

namespace vqesim::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 2;
inline constexpr int kExitSolver = 3;
inline constexpr int kExitNotConverged = 4;

inline constexpr int kSchemaVersion = 1;

/// Entry point of the `vqesim` tool. Results go to `out` as JSON (CSV for
/// `scan`), diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace vqesim::cli
