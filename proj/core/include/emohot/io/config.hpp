#pragma once

#include <filesystem>
#include <optional>

#include <nlohmann/json.hpp>

#include "emohot/grid.hpp"
#include "emohot/spatial.hpp"

namespace emohot::io {

/// Run configuration. The JSON form:
///
///   {
///     "grid":    {"bbox": [lon_min, lat_min, lon_max, lat_max], "nx": 1000, "ny": 1000},
///     "time":    {"year_start": 2006, "year_count": 10},
///     "vocab":   ["anger", "disgust", "fear", "joy", "sadness", "surprise"],
///     "weights": {"scheme": "band", "radius": 5, "k": 8},
///     "alpha": 0.05, "fdr": false, "min_years": 4
///   }
///
/// Every key is optional. The grid has no default and must come from the
/// file or the command line before points can be binned.
struct RunConfig {
  std::optional<GridSpec> grid;
  TimeAxis time{2006, 10};
  Vocabulary vocab = ekman_emotions();
  WeightsSpec weights;
  double alpha = 0.05;
  bool fdr = false;
  int min_years = 4;

  /// Throws ConfigError on any invalid component.
  void validate() const;
};

/// Overlays the keys present in `doc` onto `base`. Throws ConfigError on
/// wrong types or invalid values.
RunConfig config_from_json(const nlohmann::json& doc, RunConfig base = {});
nlohmann::json config_to_json(const RunConfig& config);

/// Throws IoError when unreadable, ConfigError when invalid.
RunConfig load_config(const std::filesystem::path& path);

/// Shared helpers for JSON-described grids and time axes.
GridSpec grid_from_json(const nlohmann::json& doc);
TimeAxis time_from_json(const nlohmann::json& doc);

}  // namespace emohot::io
