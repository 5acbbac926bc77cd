#pragma once

#include <cstdint>
#include <span>

namespace emohot {

enum class Trend : std::uint8_t { None, Increasing, Decreasing };

const char* trend_name(Trend t) noexcept;

struct MKResult {
  std::int64_t s = 0;
  double var_s = 0.0;  // tie-corrected
  double z = 0.0;      // continuity-corrected
  double p = 1.0;      // two-tailed
  Trend trend = Trend::None;
  std::size_t n = 0;
  /// Fewer than kMinTrendLength values: statistics are filled in but no trend is called.
  bool too_short = false;
};

/// Shortest series that receives a trend verdict.
inline constexpr std::size_t kMinTrendLength = 4;

/// Mann-Kendall trend test with the tie-corrected variance
///   Var(S) = [n(n-1)(2n+5) - sum_t t(t-1)(2t+5)] / 18
/// and z = (S - sgn(S)) / sqrt(Var(S)). The trend is significant when p <= alpha.
/// Throws InsufficientDataError for n < 2 and ConfigError unless alpha in (0, 1).
MKResult mann_kendall(std::span<const double> series, double alpha = 0.05);

}  // namespace emohot
