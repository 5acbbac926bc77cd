#include "emohot/emerging.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "emohot/error.hpp"
#include "emohot/parallel.hpp"

namespace emohot {

namespace {

constexpr std::array<std::string_view, kPatternCount> kPatternNames = {
    "new_hot_spot",        "consecutive_hot_spot",  "intensifying_hot_spot",  "persistent_hot_spot",
    "diminishing_hot_spot", "sporadic_hot_spot",    "oscillating_hot_spot",   "historical_hot_spot",
    "new_cold_spot",       "consecutive_cold_spot", "intensifying_cold_spot", "persistent_cold_spot",
    "diminishing_cold_spot", "sporadic_cold_spot",  "oscillating_cold_spot",  "historical_cold_spot",
    "no_pattern_detected",
};

constexpr std::uint8_t kColdOffset = 8;

// Hot-side rule kinds; the value is also the hot pattern's enumerator.
enum class Rule : std::uint8_t {
  New = 0,
  Consecutive = 1,
  Intensifying = 2,
  Persistent = 3,
  Diminishing = 4,
  Sporadic = 5,
  Oscillating = 6,
  Historical = 7,
};

constexpr std::array<Rule, 8> kRuleOrder = {Rule::New,        Rule::Consecutive, Rule::Intensifying,
                                            Rule::Persistent, Rule::Diminishing, Rule::Historical,
                                            Rule::Oscillating, Rule::Sporadic};

struct PolarityView {
  std::size_t steps = 0;
  std::size_t same = 0;      // steps with this polarity
  std::size_t opposite = 0;  // steps with the other polarity
  std::size_t final_run = 0; // trailing run of this polarity
  bool final_same = false;
  bool trend_toward = false;  // trend moves z further in this polarity
  bool trend_away = false;

  bool mostly_same() const noexcept { return 10 * same >= 9 * steps; }
  bool mostly_opposite() const noexcept { return 10 * opposite >= 9 * steps; }
};

PolarityView view(std::span<const StepFlag> data, StepFlag same, StepFlag opposite, Trend trend,
                  Trend toward) {
  PolarityView v;
  v.steps = data.size();
  for (auto f : data) {
    v.same += f == same;
    v.opposite += f == opposite;
  }
  for (auto it = data.rbegin(); it != data.rend() && *it == same; ++it) ++v.final_run;
  v.final_same = v.final_run > 0;
  v.trend_toward = trend == toward;
  v.trend_away = trend != Trend::None && trend != toward;
  return v;
}

bool matches(Rule rule, const PolarityView& v) {
  switch (rule) {
    case Rule::New:
      return v.final_same && v.same == 1;
    case Rule::Consecutive:
      return v.final_run >= 2 && v.same == v.final_run && !v.mostly_same();
    case Rule::Intensifying:
      return v.final_same && v.mostly_same() && v.trend_toward;
    case Rule::Persistent:
      return v.final_same && v.mostly_same() && !v.trend_toward && !v.trend_away;
    case Rule::Diminishing:
      return v.final_same && v.mostly_same() && v.trend_away;
    case Rule::Historical:
      return !v.final_same && v.mostly_same();
    case Rule::Oscillating:
      return v.final_same && v.opposite > 0 && !v.mostly_opposite();
    case Rule::Sporadic:
      return v.final_same && !v.mostly_same() && v.opposite == 0 && v.same > v.final_run;
  }
  return false;
}

}  // namespace

std::string_view pattern_name(EmergingPattern p) noexcept {
  return kPatternNames[static_cast<std::size_t>(p)];
}

EmergingPattern parse_pattern(std::string_view name) {
  for (std::size_t k = 0; k < kPatternCount; ++k) {
    if (kPatternNames[k] == name) return static_cast<EmergingPattern>(k);
  }
  throw ConfigError("unknown emerging pattern '" + std::string(name) + "'");
}

bool is_hot(EmergingPattern p) noexcept { return static_cast<std::uint8_t>(p) < kColdOffset; }

bool is_cold(EmergingPattern p) noexcept {
  const auto v = static_cast<std::uint8_t>(p);
  return v >= kColdOffset && v < 2 * kColdOffset;
}

EmergingPattern mirror(EmergingPattern p) noexcept {
  const auto v = static_cast<std::uint8_t>(p);
  if (is_hot(p)) return static_cast<EmergingPattern>(v + kColdOffset);
  if (is_cold(p)) return static_cast<EmergingPattern>(v - kColdOffset);
  return p;
}

const char* step_flag_name(StepFlag f) noexcept {
  switch (f) {
    case StepFlag::Hot: return "hot";
    case StepFlag::Cold: return "cold";
    case StepFlag::NotSignificant: return "not_significant";
    case StepFlag::NoData: return "no_data";
  }
  return "unknown";
}

std::vector<double> BinHistory::data_z() const {
  std::vector<double> out;
  out.reserve(z.size());
  for (std::size_t y = 0; y < flags.size(); ++y) {
    if (flags[y] != StepFlag::NoData) out.push_back(z[y]);
  }
  return out;
}

std::size_t BinHistory::data_years() const noexcept {
  return static_cast<std::size_t>(
      std::count_if(flags.begin(), flags.end(), [](StepFlag f) { return f != StepFlag::NoData; }));
}

std::vector<BinHistory> yearly_slices(const SpaceTimeCube& cube, LabelId label,
                                      const WeightsSpec& weights, double alpha) {
  weights.validate();
  const int years = cube.time().year_count();
  const std::vector<BinIndex> bins = cube.occupied_bins();

  std::vector<BinHistory> out(bins.size());
  for (std::size_t k = 0; k < bins.size(); ++k) {
    out[k].bin = bins[k];
    out[k].z.assign(static_cast<std::size_t>(years), std::numeric_limits<double>::quiet_NaN());
    out[k].flags.assign(static_cast<std::size_t>(years), StepFlag::NoData);
  }

  for (int y = 0; y < years; ++y) {
    const RatioField field = ratio_field(cube, label, y);
    if (field.size() < 2) continue;
    const GiField gi = gi_star(field, weights, alpha);
    // Slice bins are a sorted subset of `bins`.
    std::size_t k = 0;
    for (const auto& r : gi.results) {
      while (bins[k] != r.bin) ++k;
      auto& h = out[k];
      h.z[static_cast<std::size_t>(y)] = r.z;
      switch (r.spot_class) {
        case SpotClass::Hot: h.flags[static_cast<std::size_t>(y)] = StepFlag::Hot; break;
        case SpotClass::Cold: h.flags[static_cast<std::size_t>(y)] = StepFlag::Cold; break;
        case SpotClass::NotSignificant: h.flags[static_cast<std::size_t>(y)] = StepFlag::NotSignificant; break;
      }
    }
  }
  return out;
}

EmergingPattern classify_flags(std::span<const StepFlag> flags, Trend trend) {
  std::vector<StepFlag> data;
  data.reserve(flags.size());
  for (auto f : flags) {
    if (f != StepFlag::NoData) data.push_back(f);
  }
  if (data.empty()) return EmergingPattern::NoPattern;

  const PolarityView hot = view(data, StepFlag::Hot, StepFlag::Cold, trend, Trend::Increasing);
  const PolarityView cold = view(data, StepFlag::Cold, StepFlag::Hot, trend, Trend::Decreasing);
  for (Rule rule : kRuleOrder) {
    if (matches(rule, hot)) return static_cast<EmergingPattern>(rule);
    if (matches(rule, cold)) return static_cast<EmergingPattern>(static_cast<std::uint8_t>(rule) + kColdOffset);
  }
  return EmergingPattern::NoPattern;
}

EmergingPattern classify_emerging(const BinHistory& history, const MKResult& trend, double alpha) {
  Trend t = Trend::None;
  if (!trend.too_short && trend.z != 0.0 && trend.p <= alpha) {
    t = trend.z > 0.0 ? Trend::Increasing : Trend::Decreasing;
  }
  return classify_flags(history.flags, t);
}

void EmergingConfig::validate() const {
  weights.validate();
  if (!(alpha > 0.0 && alpha <= 0.5)) throw ConfigError("alpha must lie in (0, 0.5]");
  if (min_years < 1) throw ConfigError("min_years must be >= 1");
}

const EmergingBin* EmergingResult::find(BinIndex b) const noexcept {
  auto it = std::lower_bound(bins.begin(), bins.end(), b,
                             [](const EmergingBin& e, BinIndex key) { return e.bin < key; });
  return (it != bins.end() && it->bin == b) ? &*it : nullptr;
}

std::array<std::size_t, kPatternCount> EmergingResult::histogram() const noexcept {
  std::array<std::size_t, kPatternCount> h{};
  for (const auto& b : bins) ++h[static_cast<std::size_t>(b.pattern)];
  return h;
}

EmergingResult emerging_analysis(const SpaceTimeCube& cube, LabelId label, const EmergingConfig& config) {
  config.validate();
  if (label >= cube.vocab().size()) throw ConfigError("unknown label id " + std::to_string(label));

  std::vector<BinHistory> histories = yearly_slices(cube, label, config.weights, config.alpha);
  EmergingResult result;
  result.bins.resize(histories.size());
  parallel_for(histories.size(), [&](std::size_t begin, std::size_t end) {
    for (std::size_t k = begin; k < end; ++k) {
      EmergingBin& out = result.bins[k];
      out.bin = histories[k].bin;
      out.history = std::move(histories[k]);
      const std::vector<double> series = out.history.data_z();
      if (series.size() >= 2) {
        out.trend = mann_kendall(series, config.alpha);
      } else {
        out.trend.n = series.size();
        out.trend.too_short = true;
      }
      if (series.size() < static_cast<std::size_t>(config.min_years)) {
        out.insufficient_data = true;
        out.pattern = EmergingPattern::NoPattern;
      } else {
        out.pattern = classify_emerging(out.history, out.trend, config.alpha);
      }
    }
  }, 4096);
  return result;
}

}  // namespace emohot
