#include "emohot/temporal.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "emohot/error.hpp"
#include "emohot/spatial.hpp"

namespace emohot {

const char* trend_name(Trend t) noexcept {
  switch (t) {
    case Trend::Increasing: return "increasing";
    case Trend::Decreasing: return "decreasing";
    case Trend::None: return "none";
  }
  return "unknown";
}

namespace {

class Fenwick {
 public:
  explicit Fenwick(std::size_t n) : tree_(n + 1, 0) {}
  void add(std::size_t pos) {
    for (++pos; pos < tree_.size(); pos += pos & (~pos + 1)) ++tree_[pos];
  }
  // Number of inserted ranks < pos.
  std::int64_t prefix(std::size_t pos) const {
    std::int64_t sum = 0;
    for (; pos > 0; pos -= pos & (~pos + 1)) sum += tree_[pos];
    return sum;
  }

 private:
  std::vector<std::int64_t> tree_;
};

}  // namespace

MKResult mann_kendall(std::span<const double> series, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw ConfigError("alpha must lie in (0, 1)");
  const std::size_t n = series.size();
  if (n < 2) throw InsufficientDataError("Mann-Kendall needs at least two values");
  for (double x : series) {
    if (!std::isfinite(x)) throw Error("Mann-Kendall series contains a non-finite value");
  }

  std::vector<double> sorted(series.begin(), series.end());
  std::sort(sorted.begin(), sorted.end());

  // Tie groups.
  double tie_term = 0.0;
  for (std::size_t a = 0; a < n;) {
    std::size_t b = a;
    while (b < n && sorted[b] == sorted[a]) ++b;
    const double t = static_cast<double>(b - a);
    tie_term += t * (t - 1.0) * (2.0 * t + 5.0);
    a = b;
  }
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());

  // S = sum over later values of (#earlier smaller - #earlier larger).
  Fenwick seen(sorted.size());
  std::int64_t s = 0;
  for (std::size_t l = 0; l < n; ++l) {
    const auto rank = static_cast<std::size_t>(
        std::lower_bound(sorted.begin(), sorted.end(), series[l]) - sorted.begin());
    const std::int64_t below = seen.prefix(rank);
    const std::int64_t at_or_below = seen.prefix(rank + 1);
    const std::int64_t above = static_cast<std::int64_t>(l) - at_or_below;
    s += below - above;
    seen.add(rank);
  }

  MKResult r;
  r.n = n;
  r.s = s;
  const double nd = static_cast<double>(n);
  r.var_s = std::max(0.0, (nd * (nd - 1.0) * (2.0 * nd + 5.0) - tie_term) / 18.0);
  if (s != 0 && r.var_s > 0.0) {
    const double corrected = static_cast<double>(s > 0 ? s - 1 : s + 1);
    r.z = corrected / std::sqrt(r.var_s);
  }
  r.p = two_tailed_p(r.z);
  r.too_short = n < kMinTrendLength;
  if (!r.too_short && r.z != 0.0 && r.p <= alpha) {
    r.trend = r.z > 0.0 ? Trend::Increasing : Trend::Decreasing;
  }
  return r;
}

}  // namespace emohot
