#pragma once

#include <iosfwd>

namespace emohot::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFatal = 1;
inline constexpr int kExitUsage = 2;

/// Runs one CLI invocation. Data goes to `out` when an output path is "-" or
/// omitted; diagnostics always go to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace emohot::cli
