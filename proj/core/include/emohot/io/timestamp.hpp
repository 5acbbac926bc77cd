#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "emohot/grid.hpp"

namespace emohot::io {

/// Accepts `YYYY-MM-DDTHH:MM:SS[.fff](Z|+00:00)` or integer Unix seconds.
/// Fractional seconds are truncated. Returns nullopt on anything else.
std::optional<UnixSeconds> parse_timestamp(std::string_view text);

/// `YYYY-MM-DDTHH:MM:SSZ`.
std::string format_timestamp(UnixSeconds t);

/// First second of a UTC calendar year.
UnixSeconds year_begin(int year);

}  // namespace emohot::io
