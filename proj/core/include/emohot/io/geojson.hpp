#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "emohot/emerging.hpp"
#include "emohot/spatial.hpp"

namespace emohot::io {

/// Gi* results of one label.
struct SpatialLayer {
  std::string emotion;
  std::vector<GiResult> results;
};

/// Emerging analysis of one label.
struct EmergingLayer {
  std::string emotion;
  const EmergingResult* result = nullptr;
};

/// FeatureCollection with one bin-rectangle Polygon per result and properties
/// {i, j, emotion, z, p, class}. Features are ordered by (j, i), then layer order.
nlohmann::json spatial_geojson(std::span<const SpatialLayer> layers, const GridSpec& grid);

/// As spatial_geojson with properties {i, j, emotion, pattern, z_series
/// (null for no-data years), flags, trend, mk_z, mk_p, data_years}.
/// NoPattern bins are written only when `include_no_pattern` is set.
nlohmann::json emerging_geojson(std::span<const EmergingLayer> layers, const GridSpec& grid,
                                bool include_no_pattern);

/// Compact serialization plus a trailing newline. Numbers use the shortest
/// form that parses back to the same double.
void write_json(std::ostream& out, const nlohmann::json& doc);
/// Throws IoError when the file cannot be written.
void write_json_file(const std::filesystem::path& path, const nlohmann::json& doc);

}  // namespace emohot::io
