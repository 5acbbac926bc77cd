#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "emohot/cube.hpp"

namespace emohot {

struct RegionQuery {
  BBox bbox;
  LabelId label = 0;
};

/// Yearly label ratio inside a region. `ratios[y]` is empty when the region
/// holds no points in that year.
struct YearlyRatioSeries {
  std::vector<int> years;
  std::vector<std::optional<double>> ratios;
  std::vector<std::uint64_t> label_counts;
  std::vector<std::uint64_t> denominators;
};

/// Sums counts over every bin whose center lies in the query box (edges
/// inclusive) and divides per year. Throws ConfigError for an unknown label or
/// a degenerate box and OutOfBoundsError when the box misses the grid.
YearlyRatioSeries local_ratio_series(const SpaceTimeCube& cube, const RegionQuery& query);

}  // namespace emohot
