#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "emohot/grid.hpp"

namespace emohot::io {

enum class BackgroundMode {
  /// Every occupied bin gets exactly `points_per_bin` points per year with
  /// label counts apportioned from the mixture by largest remainder.
  Stratified,
  /// `points_per_year` points scattered uniformly, labels drawn from the mixture.
  Uniform,
};

/// A space-time cluster raising the share of one label inside a disc of bins.
struct ClusterSpec {
  std::string label;
  double lon = 0.0;
  double lat = 0.0;
  double radius_bins = 1.0;  // bin centers within this distance of the center bin
  int year_from = 0;
  int year_to = 0;
  /// One ratio for the whole span, or one per year of [year_from, year_to].
  std::vector<double> ratios;

  double ratio_for(int year) const;
};

struct ScenarioSpec {
  GridSpec grid;
  TimeAxis time;
  Vocabulary vocab = ekman_emotions();
  BackgroundMode mode = BackgroundMode::Stratified;
  int points_per_bin = 12;
  /// Stratified mode: chance that a bin is occupied in a given year.
  double occupancy = 1.0;
  std::uint64_t points_per_year = 0;
  /// Label weights, uniform when empty.
  std::vector<double> mixture;
  std::vector<ClusterSpec> clusters;

  /// Throws ConfigError on inconsistent settings.
  void validate() const;
};

/// JSON form:
///   {"grid": {...}, "time": {...}, "vocab": [...],
///    "background": {"mode": "stratified", "points_per_bin": 12, "occupancy": 1.0,
///                   "points_per_year": 0, "mixture": [...]},
///    "clusters": [{"label": "joy", "center": [lon, lat], "radius_bins": 2,
///                  "years": [2013, 2015], "ratio": 0.75}]}
/// A cluster may give "ratio_schedule": [...] instead of "ratio".
ScenarioSpec scenario_from_json(const nlohmann::json& doc);
nlohmann::json scenario_to_json(const ScenarioSpec& spec);

struct SynthOutput {
  std::vector<LabeledPoint> points;
  /// Ground truth: seed, point count, and per cluster its center bin and member bins.
  nlohmann::json manifest;
};

/// Deterministic for a fixed (spec, seed).
SynthOutput synth_generate(const ScenarioSpec& spec, std::uint64_t seed);

/// Per-bin label mixture used by the generator for a given bin and year.
std::vector<double> label_mixture(const ScenarioSpec& spec, BinIndex bin, int year);

/// Largest-remainder apportionment of `total` items over `weights`; ties go to the lower index.
std::vector<std::uint64_t> apportion(const std::vector<double>& weights, std::uint64_t total);

}  // namespace emohot::io
