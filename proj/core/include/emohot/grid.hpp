#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace emohot {

using LabelId = std::uint16_t;

/// Seconds since the Unix epoch, UTC.
using UnixSeconds = std::int64_t;

struct LabeledPoint {
  double lon = 0.0;
  double lat = 0.0;
  UnixSeconds timestamp = 0;
  LabelId label = 0;

  friend bool operator==(const LabeledPoint&, const LabeledPoint&) = default;
};

/// Column `i` runs along longitude, row `j` along latitude. Ordered by (i, j).
struct BinIndex {
  std::int32_t i = 0;
  std::int32_t j = 0;

  friend auto operator<=>(const BinIndex&, const BinIndex&) = default;
};

struct BBox {
  double lon_min = 0.0;
  double lat_min = 0.0;
  double lon_max = 0.0;
  double lat_max = 0.0;

  bool contains(double lon, double lat) const noexcept {
    return lon >= lon_min && lon <= lon_max && lat >= lat_min && lat <= lat_max;
  }
  bool intersects(const BBox& o) const noexcept {
    return lon_min <= o.lon_max && o.lon_min <= lon_max && lat_min <= o.lat_max &&
           o.lat_min <= lat_max;
  }
  friend bool operator==(const BBox&, const BBox&) = default;
};

/// Planar (equirectangular) grid of nx by ny bins over a lon/lat box.
class GridSpec {
 public:
  GridSpec() = default;
  /// Throws ConfigError unless the box is non-degenerate and nx, ny >= 1.
  GridSpec(BBox bbox, std::int32_t nx, std::int32_t ny);

  const BBox& bbox() const noexcept { return bbox_; }
  std::int32_t nx() const noexcept { return nx_; }
  std::int32_t ny() const noexcept { return ny_; }
  std::int64_t bin_count() const noexcept { return std::int64_t{nx_} * ny_; }
  double bin_width() const noexcept { return (bbox_.lon_max - bbox_.lon_min) / nx_; }
  double bin_height() const noexcept { return (bbox_.lat_max - bbox_.lat_min) / ny_; }

  bool contains(BinIndex b) const noexcept {
    return b.i >= 0 && b.i < nx_ && b.j >= 0 && b.j < ny_;
  }

  /// Row-major linear index j * nx + i, used for dense lookups.
  std::int64_t linear(BinIndex b) const noexcept { return std::int64_t{b.j} * nx_ + b.i; }
  BinIndex from_linear(std::int64_t k) const noexcept {
    return {static_cast<std::int32_t>(k % nx_), static_cast<std::int32_t>(k / nx_)};
  }

  double center_lon(std::int32_t i) const noexcept { return bbox_.lon_min + (i + 0.5) * bin_width(); }
  double center_lat(std::int32_t j) const noexcept { return bbox_.lat_min + (j + 0.5) * bin_height(); }
  /// Bin rectangle in lon/lat.
  BBox bin_bounds(BinIndex b) const noexcept;

  friend bool operator==(const GridSpec&, const GridSpec&) = default;

 private:
  BBox bbox_{0.0, 0.0, 1.0, 1.0};
  std::int32_t nx_ = 1;
  std::int32_t ny_ = 1;
};

/// Consecutive calendar years [year_start, year_start + year_count).
class TimeAxis {
 public:
  TimeAxis() = default;
  TimeAxis(int year_start, int year_count);

  int year_start() const noexcept { return year_start_; }
  int year_count() const noexcept { return year_count_; }
  int year_end() const noexcept { return year_start_ + year_count_ - 1; }
  bool contains_year(int year) const noexcept { return year >= year_start_ && year <= year_end(); }
  int index_of(int year) const noexcept { return year - year_start_; }
  int year_at(int index) const noexcept { return year_start_ + index; }

  friend bool operator==(const TimeAxis&, const TimeAxis&) = default;

 private:
  int year_start_ = 1970;
  int year_count_ = 1;
};

/// Ordered label names; LabelId is the position in this list.
class Vocabulary {
 public:
  Vocabulary() = default;
  /// Throws ConfigError on an empty list, duplicate names, or names containing whitespace or commas.
  explicit Vocabulary(std::vector<std::string> names);

  std::size_t size() const noexcept { return names_.size(); }
  bool empty() const noexcept { return names_.empty(); }
  const std::string& name(LabelId id) const { return names_.at(id); }
  const std::vector<std::string>& names() const noexcept { return names_; }
  /// Returns false when the name is unknown.
  bool find(std::string_view name, LabelId& out) const noexcept;
  /// Throws ConfigError when the name is unknown.
  LabelId id_of(std::string_view name) const;

  friend bool operator==(const Vocabulary&, const Vocabulary&) = default;

 private:
  std::vector<std::string> names_;
};

/// The six Ekman emotions, in the conventional order.
Vocabulary ekman_emotions();

/// Maps a point to the bin whose center is nearest (floor on the continuous
/// coordinate, interior ties go to the higher index, the max edge clamps to
/// the last bin). Throws OutOfBoundsError outside the bbox.
BinIndex bin_point(const GridSpec& grid, double lon, double lat);

/// UTC calendar year of a Unix timestamp.
int utc_year(UnixSeconds t) noexcept;

}  // namespace emohot
