#include "emohot/spatial.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <boost/math/distributions/normal.hpp>

#include "emohot/error.hpp"
#include "emohot/parallel.hpp"

namespace emohot {

void WeightsSpec::validate() const {
  switch (scheme) {
    case WeightScheme::FixedDistanceBand:
    case WeightScheme::Contiguity:
      if (!(radius > 0.0) || !std::isfinite(radius)) throw ConfigError("weights radius must be > 0");
      if (scheme == WeightScheme::Contiguity && radius < 1.0) {
        throw ConfigError("contiguity order must be >= 1");
      }
      break;
    case WeightScheme::KNearest:
      if (k < 1) throw ConfigError("k-nearest weights need k >= 1");
      break;
  }
}

const char* scheme_name(WeightScheme s) noexcept {
  switch (s) {
    case WeightScheme::FixedDistanceBand: return "band";
    case WeightScheme::KNearest: return "knn";
    case WeightScheme::Contiguity: return "contiguity";
  }
  return "unknown";
}

WeightScheme parse_scheme(std::string_view name) {
  if (name == "band") return WeightScheme::FixedDistanceBand;
  if (name == "knn") return WeightScheme::KNearest;
  if (name == "contiguity") return WeightScheme::Contiguity;
  throw ConfigError("unknown weights scheme '" + std::string(name) + "'");
}

const char* spot_class_name(SpotClass c) noexcept {
  switch (c) {
    case SpotClass::Hot: return "hot";
    case SpotClass::Cold: return "cold";
    case SpotClass::NotSignificant: return "not_significant";
  }
  return "unknown";
}

namespace {

constexpr std::int64_t kDenseLimit = std::int64_t{1} << 25;

}  // namespace

SupportIndex::SupportIndex(const GridSpec& grid, std::span<const BinIndex> support)
    : grid_(grid), bins_(support.begin(), support.end()) {
  if (grid.bin_count() <= kDenseLimit) {
    dense_.assign(static_cast<std::size_t>(grid.bin_count()), -1);
    for (std::size_t k = 0; k < bins_.size(); ++k) {
      dense_[static_cast<std::size_t>(grid.linear(bins_[k]))] = static_cast<std::int32_t>(k);
    }
  } else {
    sparse_.reserve(bins_.size());
    for (std::size_t k = 0; k < bins_.size(); ++k) {
      sparse_.emplace_back(grid.linear(bins_[k]), static_cast<std::int32_t>(k));
    }
    std::sort(sparse_.begin(), sparse_.end());
  }
}

std::int64_t SupportIndex::find(BinIndex b) const noexcept {
  if (!grid_.contains(b)) return -1;
  const std::int64_t key = grid_.linear(b);
  if (!dense_.empty()) return dense_[static_cast<std::size_t>(key)];
  auto it = std::lower_bound(sparse_.begin(), sparse_.end(), std::pair{key, std::int32_t{-1}});
  return (it != sparse_.end() && it->first == key) ? it->second : -1;
}

namespace {

// Neighborhood search bound to one weights spec and support set. Offsets for
// the stencil schemes are precomputed in (di, dj) order, which is bin order.
class NeighborFinder {
 public:
  NeighborFinder(const WeightsSpec& weights, const SupportIndex& index)
      : weights_(weights), index_(index) {
    weights.validate();
    if (weights.scheme == WeightScheme::KNearest) return;
    const auto reach = static_cast<int>(std::floor(weights.radius));
    const double r2 = weights.radius * weights.radius;
    for (int di = -reach; di <= reach; ++di) {
      for (int dj = -reach; dj <= reach; ++dj) {
        if (weights.scheme == WeightScheme::FixedDistanceBand &&
            static_cast<double>(di * di + dj * dj) > r2) {
          continue;
        }
        stencil_.push_back({di, dj});
      }
    }
  }

  void collect(BinIndex bin, std::vector<std::int64_t>& out) const {
    if (weights_.scheme == WeightScheme::KNearest) {
      collect_knn(bin, out);
      return;
    }
    for (const auto& d : stencil_) {
      const std::int64_t pos = index_.find({bin.i + d.i, bin.j + d.j});
      if (pos >= 0) out.push_back(pos);
    }
  }

 private:
  // Expanding Chebyshev rings. After scanning rings up to R every bin within
  // Euclidean distance R has been seen, so the search can stop once the k-th
  // closest candidate lies within R. Ties go to the lower (i, j).
  void collect_knn(BinIndex bin, std::vector<std::int64_t>& out) const {
    const GridSpec& g = index_.grid();
    const auto k = static_cast<std::size_t>(weights_.k);
    const std::int64_t max_ring = std::max(g.nx(), g.ny());
    struct Cand {
      std::int64_t d2;
      BinIndex bin;
      std::int64_t pos;
    };
    std::vector<Cand> cands;
    auto visit = [&](int i, int j) {
      const std::int64_t pos = index_.find({i, j});
      if (pos < 0) return;
      const std::int64_t di = i - bin.i;
      const std::int64_t dj = j - bin.j;
      cands.push_back({di * di + dj * dj, {i, j}, pos});
    };
    auto by_distance = [](const Cand& a, const Cand& b) {
      return a.d2 != b.d2 ? a.d2 < b.d2 : a.bin < b.bin;
    };
    for (std::int64_t r = 0; r <= max_ring; ++r) {
      if (r == 0) {
        visit(bin.i, bin.j);
      } else {
        const int lo_i = bin.i - static_cast<int>(r), hi_i = bin.i + static_cast<int>(r);
        const int lo_j = bin.j - static_cast<int>(r), hi_j = bin.j + static_cast<int>(r);
        for (int i = lo_i; i <= hi_i; ++i) {
          visit(i, lo_j);
          visit(i, hi_j);
        }
        for (int j = lo_j + 1; j < hi_j; ++j) {
          visit(lo_i, j);
          visit(hi_i, j);
        }
      }
      if (cands.size() >= k) {
        std::nth_element(cands.begin(), cands.begin() + static_cast<std::ptrdiff_t>(k - 1), cands.end(),
                         by_distance);
        if (cands[k - 1].d2 <= r * r) break;
      }
    }
    std::sort(cands.begin(), cands.end(), by_distance);
    if (cands.size() > k) cands.resize(k);
    std::sort(cands.begin(), cands.end(), [](const Cand& a, const Cand& b) { return a.bin < b.bin; });
    for (const auto& c : cands) out.push_back(c.pos);
  }

  WeightsSpec weights_;
  const SupportIndex& index_;
  std::vector<BinIndex> stencil_;
};

}  // namespace

void neighbor_positions(const WeightsSpec& weights, const SupportIndex& index, BinIndex bin,
                        std::vector<std::int64_t>& out) {
  if (index.find(bin) < 0) throw OutOfBoundsError("neighbor query on an unoccupied bin");
  NeighborFinder(weights, index).collect(bin, out);
}

std::vector<BinIndex> neighbors(const WeightsSpec& weights, const GridSpec& grid, BinIndex bin,
                                std::span<const BinIndex> support) {
  std::vector<BinIndex> sorted(support.begin(), support.end());
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  const SupportIndex index(grid, sorted);
  std::vector<std::int64_t> pos;
  neighbor_positions(weights, index, bin, pos);
  std::vector<BinIndex> out;
  out.reserve(pos.size());
  for (auto p : pos) out.push_back(sorted[static_cast<std::size_t>(p)]);
  return out;
}

double two_tailed_p(double z) noexcept {
  return std::erfc(std::fabs(z) / std::sqrt(2.0));
}

double z_critical(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw ConfigError("alpha must lie in (0, 1)");
  const boost::math::normal_distribution<double> standard;
  return boost::math::quantile(boost::math::complement(standard, alpha / 2.0));
}

SpotClass classify_spot(double z, double alpha) {
  if (!(alpha > 0.0 && alpha <= 0.5)) throw ConfigError("alpha must lie in (0, 0.5]");
  const double crit = z_critical(alpha);
  if (z >= crit) return SpotClass::Hot;
  if (z <= -crit) return SpotClass::Cold;
  return SpotClass::NotSignificant;
}

GiField gi_star(const RatioField& field, const WeightsSpec& weights, double alpha) {
  weights.validate();
  if (!(alpha > 0.0 && alpha <= 0.5)) throw ConfigError("alpha must lie in (0, 0.5]");
  const std::size_t n = field.size();
  if (n < 2) throw InsufficientDataError("Gi* needs at least two occupied bins");

  GiField out;
  out.results.resize(n);
  const auto [lo, hi] = std::minmax_element(field.values.begin(), field.values.end());
  if (*lo == *hi) {
    out.degenerate = true;
    for (std::size_t k = 0; k < n; ++k) out.results[k] = {field.bins[k], 0.0, 1.0, SpotClass::NotSignificant};
    return out;
  }

  const double nd = static_cast<double>(n);
  double mean = 0.0;
  for (double x : field.values) mean += x;
  mean /= nd;
  std::vector<double> centered(n);
  double ss = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    centered[k] = field.values[k] - mean;
    ss += centered[k] * centered[k];
  }
  const double s = std::sqrt(ss / nd);
  const double crit = z_critical(alpha);

  const SupportIndex index(field.grid, field.bins);
  const NeighborFinder finder(weights, index);
  parallel_for(n, [&](std::size_t begin, std::size_t end) {
    std::vector<std::int64_t> nbrs;
    for (std::size_t k = begin; k < end; ++k) {
      nbrs.clear();
      finder.collect(field.bins[k], nbrs);
      double num = 0.0;
      for (auto p : nbrs) num += centered[static_cast<std::size_t>(p)];
      const double w = static_cast<double>(nbrs.size());
      const double spread = (nd * w - w * w) / (nd - 1.0);
      GiResult& r = out.results[k];
      r.bin = field.bins[k];
      r.z = spread > 0.0 ? num / (s * std::sqrt(spread)) : 0.0;
      r.p = two_tailed_p(r.z);
      r.spot_class = r.z >= crit ? SpotClass::Hot : (r.z <= -crit ? SpotClass::Cold : SpotClass::NotSignificant);
    }
  });
  return out;
}

std::vector<GiResult> fdr_correct(std::span<const GiResult> results, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw ConfigError("alpha must lie in (0, 1)");
  std::vector<double> sorted;
  sorted.reserve(results.size());
  for (const auto& r : results) sorted.push_back(r.p);
  std::sort(sorted.begin(), sorted.end());

  const double m = static_cast<double>(sorted.size());
  double threshold = -1.0;
  for (std::size_t rank = sorted.size(); rank >= 1; --rank) {
    if (sorted[rank - 1] <= alpha * static_cast<double>(rank) / m) {
      threshold = sorted[rank - 1];
      break;
    }
  }

  std::vector<GiResult> out(results.begin(), results.end());
  for (auto& r : out) {
    if (r.p > threshold) r.spot_class = SpotClass::NotSignificant;
  }
  return out;
}

}  // namespace emohot
