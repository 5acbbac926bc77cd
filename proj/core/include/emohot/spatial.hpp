#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "emohot/cube.hpp"
#include "emohot/grid.hpp"

namespace emohot {

enum class WeightScheme { FixedDistanceBand, KNearest, Contiguity };

/// Binary spatial weights over occupied bins. Distances are Euclidean between
/// bin centers, measured in bin units (one unit = one bin step along i or j).
struct WeightsSpec {
  WeightScheme scheme = WeightScheme::FixedDistanceBand;
  /// Band: centers within `radius`. Contiguity: Chebyshev (queen) distance <= floor(radius).
  double radius = 5.0;
  /// k-nearest: neighborhood size counting the bin itself.
  int k = 8;

  /// Throws ConfigError on radius <= 0 (band, contiguity) or k < 1.
  void validate() const;

  static WeightsSpec band(double radius) { return {WeightScheme::FixedDistanceBand, radius, 8}; }
  static WeightsSpec knn(int k) { return {WeightScheme::KNearest, 1.0, k}; }
  static WeightsSpec contiguity(double order = 1.0) { return {WeightScheme::Contiguity, order, 8}; }
};

const char* scheme_name(WeightScheme s) noexcept;
/// Accepts "band", "knn" and "contiguity". Throws ConfigError otherwise.
WeightScheme parse_scheme(std::string_view name);

/// Occupied-bin lookup for neighborhood queries. Dense over the grid when it
/// is small enough, sorted-vector otherwise.
class SupportIndex {
 public:
  SupportIndex(const GridSpec& grid, std::span<const BinIndex> support);

  /// Position of `b` in the support list, or -1 when unoccupied or off-grid.
  std::int64_t find(BinIndex b) const noexcept;
  std::span<const BinIndex> bins() const noexcept { return bins_; }
  const GridSpec& grid() const noexcept { return grid_; }

 private:
  GridSpec grid_;
  std::vector<BinIndex> bins_;
  std::vector<std::int32_t> dense_;  // row-major; empty when sparse
  std::vector<std::pair<std::int64_t, std::int32_t>> sparse_;
};

/// Appends the support positions of every neighbor of `bin` (itself included)
/// to `out`, sorted by bin. `bin` must be occupied.
void neighbor_positions(const WeightsSpec& weights, const SupportIndex& index, BinIndex bin,
                        std::vector<std::int64_t>& out);

/// Neighbor set of an occupied bin, itself included, sorted by bin.
std::vector<BinIndex> neighbors(const WeightsSpec& weights, const GridSpec& grid, BinIndex bin,
                                std::span<const BinIndex> support);

enum class SpotClass : std::uint8_t { NotSignificant, Hot, Cold };

const char* spot_class_name(SpotClass c) noexcept;

struct GiResult {
  BinIndex bin;
  double z = 0.0;
  double p = 1.0;
  SpotClass spot_class = SpotClass::NotSignificant;
};

/// Output of one Gi* run; `results` is sorted by bin.
struct GiField {
  std::vector<GiResult> results;
  /// Set when every value is identical; all z are then 0.
  bool degenerate = false;
};

/// Getis-Ord Gi* with binary weights over the occupied bins of `field`.
///
/// For bin i with neighbor set N(i) of size W (i included):
///   z = (sum_{j in N(i)} x_j - mean * W) / (S * sqrt((n * W - W^2) / (n - 1)))
/// with mean and S = sqrt(sum x^2 / n - mean^2) over all n occupied bins.
/// A neighborhood spanning every occupied bin has no variance and reports z = 0.
/// Throws InsufficientDataError for n < 2.
GiField gi_star(const RatioField& field, const WeightsSpec& weights, double alpha = 0.05);

/// Two-tailed normal p-value 2 * (1 - Phi(|z|)).
double two_tailed_p(double z) noexcept;
/// Two-tailed critical value Phi^-1(1 - alpha / 2). Throws ConfigError unless alpha in (0, 1).
double z_critical(double alpha);
/// Hot if z >= z_crit, Cold if z <= -z_crit. Throws ConfigError unless alpha in (0, 0.5].
SpotClass classify_spot(double z, double alpha);

/// Benjamini-Hochberg step-up over the p-values of `results`. Keeps Hot/Cold
/// only for results whose p is at or below the step-up threshold; never
/// promotes a NotSignificant result.
std::vector<GiResult> fdr_correct(std::span<const GiResult> results, double alpha);

}  // namespace emohot
