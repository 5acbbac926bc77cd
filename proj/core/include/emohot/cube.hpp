#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "emohot/grid.hpp"

namespace emohot {

/// Per-stage record accounting. accepted + every skip category = records seen.
struct SkipReport {
  std::uint64_t accepted = 0;
  std::uint64_t out_of_bbox = 0;
  std::uint64_t out_of_time = 0;
  std::uint64_t malformed = 0;

  std::uint64_t skipped() const noexcept { return out_of_bbox + out_of_time + malformed; }
  std::uint64_t total() const noexcept { return accepted + skipped(); }
  friend bool operator==(const SkipReport&, const SkipReport&) = default;
};

/// One sparse cube entry: `count` points of `label` in `bin` during year index `year`.
struct CountRecord {
  BinIndex bin;
  std::int32_t year = 0;
  LabelId label = 0;
  std::uint64_t count = 0;

  friend bool operator==(const CountRecord&, const CountRecord&) = default;
};

/// Sparse grid x years x labels count array. Only occupied (bin, year)
/// pairs are stored; every absent key means zero points. Immutable once built.
class SpaceTimeCube {
 public:
  /// An occupied (bin, year) pair. Label counts live at [offset, offset + vocab size).
  struct Slot {
    BinIndex bin;
    std::int32_t year = 0;
    std::uint64_t total = 0;
    std::size_t offset = 0;
  };

  SpaceTimeCube() = default;
  SpaceTimeCube(GridSpec grid, TimeAxis time, Vocabulary vocab);

  /// Builds a cube from sparse records in any order; duplicates are summed and
  /// zero counts ignored. Throws OutOfBoundsError for keys outside the axes.
  static SpaceTimeCube from_records(GridSpec grid, TimeAxis time, Vocabulary vocab,
                                    std::span<const CountRecord> records);

  const GridSpec& grid() const noexcept { return grid_; }
  const TimeAxis& time() const noexcept { return time_; }
  const Vocabulary& vocab() const noexcept { return vocab_; }

  bool empty() const noexcept { return slots_.empty(); }
  /// Slots sorted by (bin, year).
  std::span<const Slot> slots() const noexcept { return slots_; }
  std::span<const std::uint64_t> label_counts(const Slot& s) const noexcept {
    return {counts_.data() + s.offset, vocab_.size()};
  }

  std::uint64_t count(BinIndex bin, int year_index, LabelId label) const noexcept;
  std::uint64_t total(BinIndex bin, int year_index) const noexcept;
  /// Sum of totals over all slots.
  std::uint64_t total_points() const noexcept;
  /// Distinct bins occupied in at least one year, sorted.
  std::vector<BinIndex> occupied_bins() const;

  /// Non-zero entries sorted by (i, j, year, label).
  std::vector<CountRecord> records() const;

  friend bool operator==(const SpaceTimeCube& a, const SpaceTimeCube& b);

 private:
  const Slot* find_slot(BinIndex bin, int year_index) const noexcept;

  GridSpec grid_;
  TimeAxis time_;
  Vocabulary vocab_;
  std::vector<Slot> slots_;
  std::vector<std::uint64_t> counts_;
};

/// Bins, time-filters and counts labeled points. Points outside the bbox or
/// the time axis are dropped and tallied; points with an out-of-vocabulary
/// label or non-finite coordinates count as malformed. Throws ConfigError on
/// an empty vocabulary.
SpaceTimeCube build_cube(std::span<const LabeledPoint> points, const GridSpec& grid,
                         const TimeAxis& time, const Vocabulary& vocab,
                         SkipReport* report = nullptr);

/// Per-bin label ratio over occupied bins only.
struct RatioField {
  GridSpec grid;
  std::vector<BinIndex> bins;  // support, sorted
  std::vector<double> values;  // values[k] belongs to bins[k], each in [0, 1]

  std::size_t size() const noexcept { return bins.size(); }
  bool empty() const noexcept { return bins.empty(); }
};

/// counts / totals for `label`, either in one year slice or aggregated over
/// all years. Throws ConfigError for an unknown label and OutOfBoundsError for
/// a year index outside the axis.
RatioField ratio_field(const SpaceTimeCube& cube, LabelId label,
                       std::optional<int> year_index = std::nullopt);

}  // namespace emohot
