#pragma once

#include <filesystem>
#include <iosfwd>

#include "emohot/cube.hpp"

namespace emohot::io {

// Cube text format, version 1. Whitespace-separated, one item per line:
//
//   emohot-cube 1
//   grid <lon_min> <lat_min> <lon_max> <lat_max> <nx> <ny>
//   time <year_start> <year_count>
//   vocab <n> <name_0> ... <name_n-1>
//   records <m>
//   <i> <j> <year> <label_index> <count>      (m lines)
//
// Years are calendar years. Records are sorted by (i, j, year, label) and
// counts are positive, so equal cubes serialize to identical bytes. Numbers
// use the shortest decimal form that round-trips.

void write_cube(std::ostream& out, const SpaceTimeCube& cube);
/// Throws ParseError on malformed input.
SpaceTimeCube read_cube(std::istream& in);

/// Throws IoError when the file cannot be written.
void save_cube(const std::filesystem::path& path, const SpaceTimeCube& cube);
/// Throws IoError when the file cannot be opened, ParseError when malformed.
SpaceTimeCube load_cube(const std::filesystem::path& path);

}  // namespace emohot::io
