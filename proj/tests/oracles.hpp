#pragma once

// Independent reference implementations used only by tests. None of these
// call into the library's statistics; they evaluate definitions directly.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <regex>
#include <string>
#include <vector>

#include "emohot/emerging.hpp"
#include "emohot/grid.hpp"
#include "emohot/spatial.hpp"
#include "emohot/temporal.hpp"

namespace oracle {

using emohot::BinIndex;

/// Nearest bin center by scanning every center; equidistant ties go to the higher index.
inline BinIndex nearest_center(const emohot::GridSpec& g, double lon, double lat) {
  BinIndex best{0, 0};
  double best_d = INFINITY;
  for (int i = 0; i < g.nx(); ++i) {
    for (int j = 0; j < g.ny(); ++j) {
      const double dx = (lon - g.center_lon(i)) / g.bin_width();
      const double dy = (lat - g.center_lat(j)) / g.bin_height();
      const double d = dx * dx + dy * dy;
      if (d < best_d - 1e-12 || (std::fabs(d - best_d) <= 1e-12 && (i > best.i || j > best.j))) {
        best_d = d;
        best = {i, j};
      }
    }
  }
  return best;
}

/// Neighbor set by exhaustive distance check over the whole support.
inline std::vector<BinIndex> neighbors(const emohot::WeightsSpec& w, BinIndex b,
                                       const std::vector<BinIndex>& support) {
  struct Cand {
    long d2;
    BinIndex bin;
  };
  std::vector<Cand> all;
  for (const auto& s : support) {
    const long di = s.i - b.i;
    const long dj = s.j - b.j;
    all.push_back({di * di + dj * dj, s});
  }
  std::vector<BinIndex> out;
  switch (w.scheme) {
    case emohot::WeightScheme::FixedDistanceBand:
      for (const auto& c : all) {
        if (std::sqrt(static_cast<double>(c.d2)) <= w.radius) out.push_back(c.bin);
      }
      break;
    case emohot::WeightScheme::Contiguity:
      for (const auto& c : all) {
        if (std::max(std::abs(c.bin.i - b.i), std::abs(c.bin.j - b.j)) <= std::floor(w.radius)) out.push_back(c.bin);
      }
      break;
    case emohot::WeightScheme::KNearest:
      std::sort(all.begin(), all.end(), [](const Cand& x, const Cand& y) {
        return x.d2 != y.d2 ? x.d2 < y.d2 : x.bin < y.bin;
      });
      for (std::size_t k = 0; k < all.size() && k < static_cast<std::size_t>(w.k); ++k) out.push_back(all[k].bin);
      break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Gi* evaluated term by term from a binary weight matrix.
inline std::vector<double> gi_star(const std::vector<double>& x, const std::vector<std::vector<int>>& w) {
  const double n = static_cast<double>(x.size());
  double sum = 0.0, sum2 = 0.0;
  for (double v : x) {
    sum += v;
    sum2 += v * v;
  }
  const double xbar = sum / n;
  const double s = std::sqrt(sum2 / n - xbar * xbar);
  std::vector<double> z(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    double sw = 0.0, swx = 0.0, sw2 = 0.0;
    for (std::size_t j = 0; j < x.size(); ++j) {
      sw += w[i][j];
      swx += w[i][j] * x[j];
      sw2 += w[i][j] * w[i][j];
    }
    // A neighborhood spanning every bin, or a constant field, carries no contrast.
    const double spread = n * sw2 - sw * sw;
    z[i] = spread <= 0.0 || s == 0.0 ? 0.0 : (swx - xbar * sw) / (s * std::sqrt(spread / (n - 1.0)));
  }
  return z;
}

/// Builds the weight matrix for `support` from the exhaustive neighbor rule.
inline std::vector<std::vector<int>> weight_matrix(const emohot::WeightsSpec& w, const std::vector<BinIndex>& support) {
  std::vector<std::vector<int>> m(support.size(), std::vector<int>(support.size(), 0));
  for (std::size_t a = 0; a < support.size(); ++a) {
    for (const auto& nb : neighbors(w, support[a], support)) {
      const auto b = std::find(support.begin(), support.end(), nb) - support.begin();
      m[a][static_cast<std::size_t>(b)] = 1;
    }
  }
  return m;
}

/// Standard normal upper-tail quantile by bisection on erfc.
inline double z_critical(double alpha) {
  double lo = 0.0, hi = 40.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (std::erfc(mid / std::sqrt(2.0)) > alpha) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

inline double normal_cdf(double x) { return 0.5 * (1.0 + std::erf(x / std::sqrt(2.0))); }

/// Mann-Kendall S by the O(n^2) pair loop.
inline std::int64_t mk_s(const std::vector<double>& x) {
  std::int64_t s = 0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    for (std::size_t l = k + 1; l < x.size(); ++l) s += (x[l] > x[k]) - (x[l] < x[k]);
  }
  return s;
}

inline double mk_var(const std::vector<double>& x) {
  std::map<double, int> groups;
  for (double v : x) ++groups[v];
  const double n = static_cast<double>(x.size());
  double v = n * (n - 1) * (2 * n + 5);
  for (const auto& [value, t] : groups) v -= t * (t - 1.0) * (2.0 * t + 5.0);
  return v / 18.0;
}

/// Benjamini-Hochberg by scanning every candidate threshold: result k passes
/// when some p_j >= p_k satisfies p_j <= alpha * rank(p_j) / m.
inline std::vector<bool> bh_pass(const std::vector<double>& p, double alpha) {
  const std::size_t m = p.size();
  std::vector<bool> pass(m, false);
  for (std::size_t k = 0; k < m; ++k) {
    for (std::size_t j = 0; j < m; ++j) {
      if (p[j] < p[k]) continue;
      std::size_t rank = 0;
      for (double q : p) rank += q <= p[j];
      if (p[j] <= alpha * static_cast<double>(rank) / static_cast<double>(m)) pass[k] = true;
    }
  }
  return pass;
}

/// Emerging categories from a string rendering of the data steps
/// ('H' hot, 'C' cold, 'N' not significant) matched with regular expressions.
inline emohot::EmergingPattern emerging(const std::vector<emohot::StepFlag>& flags, emohot::Trend trend) {
  using emohot::EmergingPattern;
  using emohot::StepFlag;
  using emohot::Trend;
  std::string hot_view;
  for (auto f : flags) {
    if (f == StepFlag::Hot) hot_view += 'H';
    if (f == StepFlag::Cold) hot_view += 'C';
    if (f == StepFlag::NotSignificant) hot_view += 'N';
  }
  if (hot_view.empty()) return EmergingPattern::NoPattern;
  std::string cold_view = hot_view;
  for (char& c : cold_view) c = c == 'H' ? 'C' : (c == 'C' ? 'H' : c);
  const Trend cold_trend = trend == Trend::Increasing ? Trend::Decreasing
                           : trend == Trend::Decreasing ? Trend::Increasing
                                                        : Trend::None;

  // Rules written for the hot case; index equals the hot enumerator.
  auto rule = [](int idx, const std::string& s, Trend t) {
    const double m = static_cast<double>(s.size());
    const double h = static_cast<double>(std::count(s.begin(), s.end(), 'H'));
    const double c = static_cast<double>(std::count(s.begin(), s.end(), 'C'));
    const bool ends_hot = s.back() == 'H';
    const bool ninety_hot = h / m >= 0.9 - 1e-12;
    switch (idx) {
      case 0: return std::regex_match(s, std::regex("[^H]*H"));
      case 1: return std::regex_match(s, std::regex("[^H]*HH+")) && !ninety_hot;
      case 2: return ends_hot && ninety_hot && t == Trend::Increasing;
      case 3: return ends_hot && ninety_hot && t == Trend::None;
      case 4: return ends_hot && ninety_hot && t == Trend::Decreasing;
      case 7: return !ends_hot && ninety_hot;
      case 6: return ends_hot && c > 0 && c / m < 0.9 - 1e-12;
      case 5: return ends_hot && !ninety_hot && c == 0 && std::regex_search(s, std::regex("H[^H]+H"));
    }
    return false;
  };
  for (int idx : {0, 1, 2, 3, 4, 7, 6, 5}) {
    if (rule(idx, hot_view, trend)) return static_cast<EmergingPattern>(idx);
    if (rule(idx, cold_view, cold_trend)) return static_cast<EmergingPattern>(idx + 8);
  }
  return EmergingPattern::NoPattern;
}

}  // namespace oracle
