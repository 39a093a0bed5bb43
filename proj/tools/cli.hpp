#pragma once

#include <ostream>

namespace hdcat::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitPropertyFailure = 1;
inline constexpr int kExitInputError = 2;

/// Runs one command line. JSON reports go to `out` (or the --output file),
/// diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace hdcat::cli
