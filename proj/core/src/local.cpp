#include "emohot/local.hpp"

#include <string>

#include "emohot/error.hpp"

namespace emohot {

YearlyRatioSeries local_ratio_series(const SpaceTimeCube& cube, const RegionQuery& query) {
  const BBox& q = query.bbox;
  if (!(q.lon_min < q.lon_max) || !(q.lat_min < q.lat_max)) {
    throw ConfigError("region bbox is degenerate");
  }
  if (query.label >= cube.vocab().size()) {
    throw ConfigError("unknown label id " + std::to_string(query.label));
  }
  const GridSpec& grid = cube.grid();
  if (!grid.bbox().intersects(q)) throw OutOfBoundsError("region bbox lies outside the grid");

  const auto years = static_cast<std::size_t>(cube.time().year_count());
  YearlyRatioSeries out;
  out.years.resize(years);
  out.ratios.resize(years);
  out.label_counts.assign(years, 0);
  out.denominators.assign(years, 0);
  for (std::size_t y = 0; y < years; ++y) out.years[y] = cube.time().year_at(static_cast<int>(y));

  for (const auto& slot : cube.slots()) {
    if (!q.contains(grid.center_lon(slot.bin.i), grid.center_lat(slot.bin.j))) continue;
    const auto y = static_cast<std::size_t>(slot.year);
    out.label_counts[y] += cube.label_counts(slot)[query.label];
    out.denominators[y] += slot.total;
  }
  for (std::size_t y = 0; y < years; ++y) {
    if (out.denominators[y] > 0) {
      out.ratios[y] = static_cast<double>(out.label_counts[y]) / static_cast<double>(out.denominators[y]);
    }
  }
  return out;
}

}  // namespace emohot
