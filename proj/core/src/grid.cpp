#include "emohot/grid.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "emohot/error.hpp"

namespace emohot {

GridSpec::GridSpec(BBox bbox, std::int32_t nx, std::int32_t ny) : bbox_(bbox), nx_(nx), ny_(ny) {
  if (!(bbox.lon_min < bbox.lon_max) || !(bbox.lat_min < bbox.lat_max)) {
    throw ConfigError("grid bbox must satisfy lon_min < lon_max and lat_min < lat_max");
  }
  if (nx < 1 || ny < 1) {
    throw ConfigError("grid needs nx >= 1 and ny >= 1");
  }
  if (!(bin_width() > 0.0) || !(bin_height() > 0.0)) {
    throw ConfigError("grid bins have zero extent");
  }
}

BBox GridSpec::bin_bounds(BinIndex b) const noexcept {
  const double w = bin_width();
  const double h = bin_height();
  // The last column/row ends exactly on the bbox edge.
  return {bbox_.lon_min + b.i * w, bbox_.lat_min + b.j * h,
          b.i + 1 == nx_ ? bbox_.lon_max : bbox_.lon_min + (b.i + 1) * w,
          b.j + 1 == ny_ ? bbox_.lat_max : bbox_.lat_min + (b.j + 1) * h};
}

TimeAxis::TimeAxis(int year_start, int year_count) : year_start_(year_start), year_count_(year_count) {
  if (year_count < 1) throw ConfigError("time axis needs at least one year");
}

Vocabulary::Vocabulary(std::vector<std::string> names) : names_(std::move(names)) {
  if (names_.empty()) throw ConfigError("label vocabulary is empty");
  if (names_.size() > 65535) throw ConfigError("label vocabulary too large");
  for (std::size_t a = 0; a < names_.size(); ++a) {
    const auto& n = names_[a];
    if (n.empty() || n.find_first_of(" \t\r\n,\"") != std::string::npos) {
      throw ConfigError("invalid label name '" + n + "'");
    }
    for (std::size_t b = 0; b < a; ++b) {
      if (names_[b] == n) throw ConfigError("duplicate label name '" + n + "'");
    }
  }
}

bool Vocabulary::find(std::string_view name, LabelId& out) const noexcept {
  for (std::size_t k = 0; k < names_.size(); ++k) {
    if (names_[k] == name) {
      out = static_cast<LabelId>(k);
      return true;
    }
  }
  return false;
}

LabelId Vocabulary::id_of(std::string_view name) const {
  LabelId id = 0;
  if (!find(name, id)) throw ConfigError("unknown label '" + std::string(name) + "'");
  return id;
}

Vocabulary ekman_emotions() {
  return Vocabulary({"anger", "disgust", "fear", "joy", "sadness", "surprise"});
}

namespace {

std::int32_t axis_bin(double v, double lo, double width, std::int32_t n) {
  const double f = std::floor((v - lo) / width);
  return static_cast<std::int32_t>(std::clamp(f, 0.0, static_cast<double>(n - 1)));
}

}  // namespace

BinIndex bin_point(const GridSpec& grid, double lon, double lat) {
  const BBox& b = grid.bbox();
  if (!b.contains(lon, lat)) {
    throw OutOfBoundsError("point (" + std::to_string(lon) + ", " + std::to_string(lat) +
                           ") outside grid bbox");
  }
  return {axis_bin(lon, b.lon_min, grid.bin_width(), grid.nx()),
          axis_bin(lat, b.lat_min, grid.bin_height(), grid.ny())};
}

int utc_year(UnixSeconds t) noexcept {
  using namespace std::chrono;
  const auto day = floor<days>(sys_seconds{seconds{t}});
  return static_cast<int>(year_month_day{day}.year());
}

}  // namespace emohot
