#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "emohot/cube.hpp"
#include "emohot/spatial.hpp"
#include "emohot/temporal.hpp"

namespace emohot {

/// Emerging hot/cold spot categories. Cold values mirror the hot ones at an
/// offset of 8.
enum class EmergingPattern : std::uint8_t {
  NewHot,
  ConsecutiveHot,
  IntensifyingHot,
  PersistentHot,
  DiminishingHot,
  SporadicHot,
  OscillatingHot,
  HistoricalHot,
  NewCold,
  ConsecutiveCold,
  IntensifyingCold,
  PersistentCold,
  DiminishingCold,
  SporadicCold,
  OscillatingCold,
  HistoricalCold,
  NoPattern,
};

inline constexpr std::size_t kPatternCount = 17;

/// snake_case export name, e.g. "new_hot_spot" or "no_pattern_detected".
std::string_view pattern_name(EmergingPattern p) noexcept;
/// Inverse of pattern_name. Throws ConfigError on an unknown name.
EmergingPattern parse_pattern(std::string_view name);
/// Hot <-> cold counterpart; NoPattern maps to itself.
EmergingPattern mirror(EmergingPattern p) noexcept;
bool is_hot(EmergingPattern p) noexcept;
bool is_cold(EmergingPattern p) noexcept;

enum class StepFlag : std::uint8_t { NotSignificant, Hot, Cold, NoData };

const char* step_flag_name(StepFlag f) noexcept;

/// Per-year Gi* record of one bin. NoData years carry NaN in `z`.
struct BinHistory {
  BinIndex bin;
  std::vector<double> z;
  std::vector<StepFlag> flags;

  /// z values of the data years, in year order.
  std::vector<double> data_z() const;
  std::size_t data_years() const noexcept;
};

/// Per-year Gi* over the ratio slice of `label`, assembled into one history
/// per bin occupied in any year. Years with fewer than two occupied bins are
/// NoData for every bin.
std::vector<BinHistory> yearly_slices(const SpaceTimeCube& cube, LabelId label,
                                      const WeightsSpec& weights, double alpha);

/// Rule table over the data steps of a flag series (NoData dropped):
///   new          final hot, no earlier hot
///   consecutive  final run of >= 2 hot, no hot before it, < 90% hot
///   intensifying >= 90% hot, final hot, trend increasing
///   persistent   >= 90% hot, final hot, no trend
///   diminishing  >= 90% hot, final hot, trend decreasing
///   historical   final not hot, >= 90% hot
///   oscillating  final hot, some earlier cold, < 90% cold
///   sporadic     final hot, < 90% hot, never cold
/// Each rule is tried for hot then cold before moving to the next rule.
EmergingPattern classify_flags(std::span<const StepFlag> flags, Trend trend);

/// classify_flags on the history, with the trend re-read at `alpha`.
EmergingPattern classify_emerging(const BinHistory& history, const MKResult& trend, double alpha);

struct EmergingConfig {
  WeightsSpec weights;
  double alpha = 0.05;
  /// Bins with fewer data years get NoPattern and the insufficient-data flag.
  int min_years = static_cast<int>(kMinTrendLength);

  void validate() const;
};

struct EmergingBin {
  BinIndex bin;
  EmergingPattern pattern = EmergingPattern::NoPattern;
  BinHistory history;
  MKResult trend;
  bool insufficient_data = false;
};

/// Pipeline output, sorted by bin.
struct EmergingResult {
  std::vector<EmergingBin> bins;

  const EmergingBin* find(BinIndex b) const noexcept;
  std::array<std::size_t, kPatternCount> histogram() const noexcept;
};

/// yearly_slices -> Mann-Kendall on each bin's data-year z series -> classify.
EmergingResult emerging_analysis(const SpaceTimeCube& cube, LabelId label, const EmergingConfig& config);

}  // namespace emohot
