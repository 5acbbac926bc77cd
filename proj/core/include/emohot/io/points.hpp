#pragma once

#include <iosfwd>
#include <span>
#include <string_view>
#include <vector>

#include "emohot/cube.hpp"
#include "emohot/grid.hpp"

namespace emohot::io {

enum class PointFormat { Csv, GeoJson };

/// "csv" or "geojson". Throws ConfigError otherwise.
PointFormat parse_point_format(std::string_view name);

struct ParsedPoints {
  std::vector<LabeledPoint> points;
  /// accepted = points.size(); only `malformed` is set among the skip counts.
  SkipReport report;
};

/// CSV: header `lon,lat,timestamp,label`, then one record per line; blank
/// lines are ignored. GeoJSON: a FeatureCollection of Point features with
/// `timestamp` and `label` properties. Records that fail to parse, carry
/// out-of-range coordinates, or name a label outside `vocab` are counted as
/// malformed. A missing header or unparseable document throws ParseError.
ParsedPoints parse_points(std::istream& in, PointFormat format, const Vocabulary& vocab);

/// Writes the CSV form read by parse_points, with shortest round-trip numbers.
void write_points_csv(std::ostream& out, std::span<const LabeledPoint> points, const Vocabulary& vocab);

/// Shortest decimal text that parses back to exactly `v`.
std::string format_double(double v);

}  // namespace emohot::io
