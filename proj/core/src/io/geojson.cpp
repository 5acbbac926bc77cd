#include "emohot/io/geojson.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <ostream>

#include "emohot/error.hpp"

namespace emohot::io {

namespace {

using nlohmann::json;

json bin_polygon(const GridSpec& grid, BinIndex b) {
  const BBox r = grid.bin_bounds(b);
  // Counter-clockwise exterior ring.
  return {{"type", "Polygon"},
          {"coordinates",
           json::array({json::array({json::array({r.lon_min, r.lat_min}), json::array({r.lon_max, r.lat_min}),
                                     json::array({r.lon_max, r.lat_max}), json::array({r.lon_min, r.lat_max}),
                                     json::array({r.lon_min, r.lat_min})})})}};
}

json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

struct Item {
  BinIndex bin;
  std::size_t layer;
  std::size_t index;
};

bool row_major(const Item& a, const Item& b) {
  if (a.bin.j != b.bin.j) return a.bin.j < b.bin.j;
  if (a.bin.i != b.bin.i) return a.bin.i < b.bin.i;
  return a.layer < b.layer;
}

json collection(json features) {
  return {{"type", "FeatureCollection"}, {"features", std::move(features)}};
}

}  // namespace

nlohmann::json spatial_geojson(std::span<const SpatialLayer> layers, const GridSpec& grid) {
  std::vector<Item> items;
  for (std::size_t l = 0; l < layers.size(); ++l) {
    for (std::size_t k = 0; k < layers[l].results.size(); ++k) items.push_back({layers[l].results[k].bin, l, k});
  }
  std::sort(items.begin(), items.end(), row_major);

  json features = json::array();
  for (const auto& it : items) {
    const GiResult& r = layers[it.layer].results[it.index];
    features.push_back({{"type", "Feature"},
                        {"geometry", bin_polygon(grid, r.bin)},
                        {"properties",
                         {{"i", r.bin.i},
                          {"j", r.bin.j},
                          {"emotion", layers[it.layer].emotion},
                          {"z", number_or_null(r.z)},
                          {"p", number_or_null(r.p)},
                          {"class", spot_class_name(r.spot_class)}}}});
  }
  return collection(std::move(features));
}

nlohmann::json emerging_geojson(std::span<const EmergingLayer> layers, const GridSpec& grid,
                                bool include_no_pattern) {
  std::vector<Item> items;
  for (std::size_t l = 0; l < layers.size(); ++l) {
    const auto& bins = layers[l].result->bins;
    for (std::size_t k = 0; k < bins.size(); ++k) {
      if (!include_no_pattern && bins[k].pattern == EmergingPattern::NoPattern) continue;
      items.push_back({bins[k].bin, l, k});
    }
  }
  std::sort(items.begin(), items.end(), row_major);

  json features = json::array();
  for (const auto& it : items) {
    const EmergingBin& b = layers[it.layer].result->bins[it.index];
    json z_series = json::array();
    json flags = json::array();
    for (std::size_t y = 0; y < b.history.flags.size(); ++y) {
      z_series.push_back(b.history.flags[y] == StepFlag::NoData ? json(nullptr) : number_or_null(b.history.z[y]));
      flags.push_back(step_flag_name(b.history.flags[y]));
    }
    features.push_back({{"type", "Feature"},
                        {"geometry", bin_polygon(grid, b.bin)},
                        {"properties",
                         {{"i", b.bin.i},
                          {"j", b.bin.j},
                          {"emotion", layers[it.layer].emotion},
                          {"pattern", std::string(pattern_name(b.pattern))},
                          {"z_series", std::move(z_series)},
                          {"flags", std::move(flags)},
                          {"trend", trend_name(b.trend.trend)},
                          {"mk_z", number_or_null(b.trend.z)},
                          {"mk_p", number_or_null(b.trend.p)},
                          {"data_years", b.history.data_years()},
                          {"insufficient_data", b.insufficient_data}}}});
  }
  return collection(std::move(features));
}

void write_json(std::ostream& out, const nlohmann::json& doc) {
  out << doc.dump() << '\n';
}

void write_json_file(const std::filesystem::path& path, const nlohmann::json& doc) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  write_json(out, doc);
  out.flush();
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

}  // namespace emohot::io
