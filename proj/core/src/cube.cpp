#include "emohot/cube.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>

#include "emohot/error.hpp"

namespace emohot {

namespace {

// Packs (bin, year, label) into one sortable key with (i, j, year, label) order.
struct KeyCodec {
  std::uint64_t ny, years, labels;

  std::uint64_t encode(BinIndex b, std::int32_t year, LabelId label) const noexcept {
    const std::uint64_t bin = static_cast<std::uint64_t>(b.i) * ny + static_cast<std::uint64_t>(b.j);
    return (bin * years + static_cast<std::uint64_t>(year)) * labels + label;
  }
  CountRecord decode(std::uint64_t key) const noexcept {
    CountRecord r;
    r.label = static_cast<LabelId>(key % labels);
    key /= labels;
    r.year = static_cast<std::int32_t>(key % years);
    key /= years;
    r.bin = {static_cast<std::int32_t>(key / ny), static_cast<std::int32_t>(key % ny)};
    return r;
  }
};

KeyCodec codec_for(const GridSpec& g, const TimeAxis& t, const Vocabulary& v) {
  return {static_cast<std::uint64_t>(g.ny()), static_cast<std::uint64_t>(t.year_count()),
          static_cast<std::uint64_t>(v.size())};
}

}  // namespace

SpaceTimeCube::SpaceTimeCube(GridSpec grid, TimeAxis time, Vocabulary vocab)
    : grid_(std::move(grid)), time_(time), vocab_(std::move(vocab)) {
  if (vocab_.empty()) throw ConfigError("label vocabulary is empty");
}

SpaceTimeCube SpaceTimeCube::from_records(GridSpec grid, TimeAxis time, Vocabulary vocab,
                                          std::span<const CountRecord> records) {
  SpaceTimeCube cube(std::move(grid), time, std::move(vocab));
  const KeyCodec codec = codec_for(cube.grid_, cube.time_, cube.vocab_);

  std::vector<std::pair<std::uint64_t, std::uint64_t>> keyed;
  keyed.reserve(records.size());
  for (const auto& r : records) {
    if (!cube.grid_.contains(r.bin) || r.year < 0 || r.year >= cube.time_.year_count() ||
        r.label >= cube.vocab_.size()) {
      throw OutOfBoundsError("cube record outside grid, time axis or vocabulary");
    }
    if (r.count == 0) continue;
    keyed.emplace_back(codec.encode(r.bin, r.year, r.label), r.count);
  }
  std::sort(keyed.begin(), keyed.end());

  const std::size_t nlabels = cube.vocab_.size();
  const std::uint64_t per_slot = nlabels;
  for (std::size_t a = 0; a < keyed.size();) {
    const std::uint64_t slot_key = keyed[a].first / per_slot;
    const CountRecord head = codec.decode(keyed[a].first);
    Slot slot{head.bin, head.year, 0, cube.counts_.size()};
    cube.counts_.resize(cube.counts_.size() + nlabels, 0);
    for (; a < keyed.size() && keyed[a].first / per_slot == slot_key; ++a) {
      const auto label = static_cast<std::size_t>(keyed[a].first % per_slot);
      cube.counts_[slot.offset + label] += keyed[a].second;
      slot.total += keyed[a].second;
    }
    cube.slots_.push_back(slot);
  }
  return cube;
}

const SpaceTimeCube::Slot* SpaceTimeCube::find_slot(BinIndex bin, int year_index) const noexcept {
  auto it = std::lower_bound(slots_.begin(), slots_.end(), std::pair{bin, year_index},
                             [](const Slot& s, const std::pair<BinIndex, int>& k) {
                               return std::tie(s.bin, s.year) < std::tie(k.first, k.second);
                             });
  if (it == slots_.end() || it->bin != bin || it->year != year_index) return nullptr;
  return &*it;
}

std::uint64_t SpaceTimeCube::count(BinIndex bin, int year_index, LabelId label) const noexcept {
  if (label >= vocab_.size()) return 0;
  const Slot* s = find_slot(bin, year_index);
  return s ? counts_[s->offset + label] : 0;
}

std::uint64_t SpaceTimeCube::total(BinIndex bin, int year_index) const noexcept {
  const Slot* s = find_slot(bin, year_index);
  return s ? s->total : 0;
}

std::uint64_t SpaceTimeCube::total_points() const noexcept {
  std::uint64_t n = 0;
  for (const auto& s : slots_) n += s.total;
  return n;
}

std::vector<BinIndex> SpaceTimeCube::occupied_bins() const {
  std::vector<BinIndex> out;
  for (const auto& s : slots_) {
    if (out.empty() || out.back() != s.bin) out.push_back(s.bin);
  }
  return out;
}

std::vector<CountRecord> SpaceTimeCube::records() const {
  std::vector<CountRecord> out;
  for (const auto& s : slots_) {
    for (std::size_t l = 0; l < vocab_.size(); ++l) {
      if (const auto c = counts_[s.offset + l]) {
        out.push_back({s.bin, s.year, static_cast<LabelId>(l), c});
      }
    }
  }
  return out;
}

bool operator==(const SpaceTimeCube& a, const SpaceTimeCube& b) {
  return a.grid_ == b.grid_ && a.time_ == b.time_ && a.vocab_ == b.vocab_ &&
         a.records() == b.records();
}

SpaceTimeCube build_cube(std::span<const LabeledPoint> points, const GridSpec& grid,
                         const TimeAxis& time, const Vocabulary& vocab, SkipReport* report) {
  if (vocab.empty()) throw ConfigError("label vocabulary is empty");
  SkipReport skips;
  const KeyCodec codec = codec_for(grid, time, vocab);

  std::vector<std::uint64_t> keys;
  keys.reserve(points.size());
  for (const auto& p : points) {
    if (!std::isfinite(p.lon) || !std::isfinite(p.lat) || p.label >= vocab.size()) {
      ++skips.malformed;
      continue;
    }
    if (!grid.bbox().contains(p.lon, p.lat)) {
      ++skips.out_of_bbox;
      continue;
    }
    const int year = utc_year(p.timestamp);
    if (!time.contains_year(year)) {
      ++skips.out_of_time;
      continue;
    }
    keys.push_back(codec.encode(bin_point(grid, p.lon, p.lat), time.index_of(year), p.label));
    ++skips.accepted;
  }
  std::sort(keys.begin(), keys.end());

  std::vector<CountRecord> records;
  for (std::size_t a = 0; a < keys.size();) {
    std::size_t b = a;
    while (b < keys.size() && keys[b] == keys[a]) ++b;
    CountRecord r = codec.decode(keys[a]);
    r.count = b - a;
    records.push_back(r);
    a = b;
  }
  if (report) *report = skips;
  return SpaceTimeCube::from_records(grid, time, vocab, records);
}

RatioField ratio_field(const SpaceTimeCube& cube, LabelId label, std::optional<int> year_index) {
  if (label >= cube.vocab().size()) {
    throw ConfigError("unknown label id " + std::to_string(label));
  }
  if (year_index && (*year_index < 0 || *year_index >= cube.time().year_count())) {
    throw OutOfBoundsError("year index " + std::to_string(*year_index) + " outside time axis");
  }
  RatioField field;
  field.grid = cube.grid();

  const auto slots = cube.slots();
  for (std::size_t a = 0; a < slots.size();) {
    const BinIndex bin = slots[a].bin;
    std::uint64_t hits = 0;
    std::uint64_t total = 0;
    for (; a < slots.size() && slots[a].bin == bin; ++a) {
      if (year_index && slots[a].year != *year_index) continue;
      hits += cube.label_counts(slots[a])[label];
      total += slots[a].total;
    }
    if (total > 0) {
      field.bins.push_back(bin);
      field.values.push_back(static_cast<double>(hits) / static_cast<double>(total));
    }
  }
  return field;
}

}  // namespace emohot
