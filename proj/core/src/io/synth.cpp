#include "emohot/io/synth.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "emohot/error.hpp"
#include "emohot/io/config.hpp"
#include "emohot/io/timestamp.hpp"

namespace emohot::io {

using nlohmann::json;

double ClusterSpec::ratio_for(int year) const {
  if (ratios.size() == 1) return ratios.front();
  return ratios.at(static_cast<std::size_t>(year - year_from));
}

void ScenarioSpec::validate() const {
  if (vocab.empty()) throw ConfigError("scenario vocabulary is empty");
  if (!mixture.empty()) {
    if (mixture.size() != vocab.size()) throw ConfigError("mixture length must match the vocabulary");
    double sum = 0.0;
    for (double w : mixture) {
      if (!(w >= 0.0) || !std::isfinite(w)) throw ConfigError("mixture weights must be finite and >= 0");
      sum += w;
    }
    if (!(sum > 0.0)) throw ConfigError("mixture weights sum to zero");
  }
  if (mode == BackgroundMode::Stratified) {
    if (points_per_bin < 1) throw ConfigError("points_per_bin must be >= 1");
    if (!(occupancy > 0.0 && occupancy <= 1.0)) throw ConfigError("occupancy must lie in (0, 1]");
  }
  for (const auto& c : clusters) {
    vocab.id_of(c.label);
    if (!grid.bbox().contains(c.lon, c.lat)) throw ConfigError("cluster center outside the grid");
    if (!(c.radius_bins >= 0.0)) throw ConfigError("cluster radius must be >= 0");
    if (c.year_from > c.year_to || !time.contains_year(c.year_from) || !time.contains_year(c.year_to)) {
      throw ConfigError("cluster years must lie inside the time axis");
    }
    const auto span = static_cast<std::size_t>(c.year_to - c.year_from + 1);
    if (c.ratios.size() != 1 && c.ratios.size() != span) {
      throw ConfigError("cluster needs one ratio or one per year");
    }
    for (double r : c.ratios) {
      if (!(r >= 0.0 && r <= 1.0)) throw ConfigError("cluster ratio must lie in [0, 1]");
    }
  }
}

ScenarioSpec scenario_from_json(const json& doc) {
  ScenarioSpec spec;
  try {
    spec.grid = grid_from_json(doc.at("grid"));
    spec.time = time_from_json(doc.at("time"));
    if (doc.contains("vocab")) spec.vocab = Vocabulary(doc["vocab"].get<std::vector<std::string>>());
    if (doc.contains("background")) {
      const auto& bg = doc["background"];
      const std::string mode = bg.value("mode", "stratified");
      if (mode == "stratified") {
        spec.mode = BackgroundMode::Stratified;
      } else if (mode == "uniform") {
        spec.mode = BackgroundMode::Uniform;
      } else {
        throw ConfigError("unknown background mode '" + mode + "'");
      }
      spec.points_per_bin = bg.value("points_per_bin", spec.points_per_bin);
      spec.occupancy = bg.value("occupancy", spec.occupancy);
      spec.points_per_year = bg.value("points_per_year", spec.points_per_year);
      if (bg.contains("mixture")) spec.mixture = bg["mixture"].get<std::vector<double>>();
    }
    if (doc.contains("clusters")) {
      for (const auto& c : doc["clusters"]) {
        ClusterSpec cl;
        cl.label = c.at("label").get<std::string>();
        cl.lon = c.at("center").at(0).get<double>();
        cl.lat = c.at("center").at(1).get<double>();
        cl.radius_bins = c.value("radius_bins", 1.0);
        cl.year_from = c.at("years").at(0).get<int>();
        cl.year_to = c.at("years").at(1).get<int>();
        if (c.contains("ratio_schedule")) {
          cl.ratios = c["ratio_schedule"].get<std::vector<double>>();
        } else {
          cl.ratios = {c.at("ratio").get<double>()};
        }
        spec.clusters.push_back(std::move(cl));
      }
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("scenario: ") + e.what());
  }
  spec.validate();
  return spec;
}

json scenario_to_json(const ScenarioSpec& spec) {
  const BBox& b = spec.grid.bbox();
  json doc;
  doc["grid"] = {{"bbox", {b.lon_min, b.lat_min, b.lon_max, b.lat_max}}, {"nx", spec.grid.nx()}, {"ny", spec.grid.ny()}};
  doc["time"] = {{"year_start", spec.time.year_start()}, {"year_count", spec.time.year_count()}};
  doc["vocab"] = spec.vocab.names();
  doc["background"] = {{"mode", spec.mode == BackgroundMode::Stratified ? "stratified" : "uniform"},
                       {"points_per_bin", spec.points_per_bin},
                       {"occupancy", spec.occupancy},
                       {"points_per_year", spec.points_per_year},
                       {"mixture", spec.mixture}};
  doc["clusters"] = json::array();
  for (const auto& c : spec.clusters) {
    json cj = {{"label", c.label},
               {"center", {c.lon, c.lat}},
               {"radius_bins", c.radius_bins},
               {"years", {c.year_from, c.year_to}}};
    if (c.ratios.size() == 1) {
      cj["ratio"] = c.ratios.front();
    } else {
      cj["ratio_schedule"] = c.ratios;
    }
    doc["clusters"].push_back(std::move(cj));
  }
  return doc;
}

std::vector<std::uint64_t> apportion(const std::vector<double>& weights, std::uint64_t total) {
  const double sum = std::accumulate(weights.begin(), weights.end(), 0.0);
  std::vector<std::uint64_t> counts(weights.size(), 0);
  std::vector<std::pair<double, std::size_t>> remainders;
  std::uint64_t assigned = 0;
  for (std::size_t l = 0; l < weights.size(); ++l) {
    const double quota = weights[l] / sum * static_cast<double>(total);
    counts[l] = static_cast<std::uint64_t>(std::floor(quota));
    assigned += counts[l];
    remainders.emplace_back(quota - std::floor(quota), l);
  }
  std::stable_sort(remainders.begin(), remainders.end(),
                   [](const auto& a, const auto& b) { return a.first > b.first; });
  for (std::size_t k = 0; assigned < total; ++k, ++assigned) ++counts[remainders[k % remainders.size()].second];
  return counts;
}

namespace {

bool in_cluster(const ClusterSpec& c, BinIndex center, BinIndex b) {
  const double di = b.i - center.i;
  const double dj = b.j - center.j;
  return di * di + dj * dj <= c.radius_bins * c.radius_bins;
}

// 53 random bits mapped to [0, 1); stable across standard library implementations.
double unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

LabelId draw_label(const std::vector<double>& mixture, double u) {
  const double sum = std::accumulate(mixture.begin(), mixture.end(), 0.0);
  double acc = 0.0;
  for (std::size_t l = 0; l < mixture.size(); ++l) {
    acc += mixture[l] / sum;
    if (u < acc) return static_cast<LabelId>(l);
  }
  for (std::size_t l = mixture.size(); l-- > 0;) {
    if (mixture[l] > 0.0) return static_cast<LabelId>(l);
  }
  return 0;
}

}  // namespace

std::vector<double> label_mixture(const ScenarioSpec& spec, BinIndex bin, int year) {
  std::vector<double> base = spec.mixture;
  if (base.empty()) base.assign(spec.vocab.size(), 1.0);
  for (const auto& c : spec.clusters) {
    if (year < c.year_from || year > c.year_to) continue;
    if (!in_cluster(c, bin_point(spec.grid, c.lon, c.lat), bin)) continue;
    const LabelId target = spec.vocab.id_of(c.label);
    const double ratio = c.ratio_for(year);
    double others = 0.0;
    for (std::size_t l = 0; l < base.size(); ++l) others += l == target ? 0.0 : base[l];
    std::vector<double> mix(base.size(), 0.0);
    mix[target] = ratio;
    for (std::size_t l = 0; l < base.size(); ++l) {
      if (l == target) continue;
      mix[l] = others > 0.0 ? (1.0 - ratio) * base[l] / others
                            : (1.0 - ratio) / static_cast<double>(base.size() - 1);
    }
    if (base.size() == 1) mix[target] = 1.0;
    return mix;
  }
  return base;
}

SynthOutput synth_generate(const ScenarioSpec& spec, std::uint64_t seed) {
  spec.validate();
  std::mt19937_64 rng(seed);
  const GridSpec& g = spec.grid;
  SynthOutput out;

  for (int y = 0; y < spec.time.year_count(); ++y) {
    const int year = spec.time.year_at(y);
    const UnixSeconds t0 = year_begin(year);
    const auto year_len = static_cast<double>(year_begin(year + 1) - t0);
    auto timestamp = [&] { return t0 + static_cast<UnixSeconds>(std::floor(unit(rng) * year_len)); };

    if (spec.mode == BackgroundMode::Stratified) {
      for (std::int32_t j = 0; j < g.ny(); ++j) {
        for (std::int32_t i = 0; i < g.nx(); ++i) {
          if (spec.occupancy < 1.0 && unit(rng) >= spec.occupancy) continue;
          const auto counts = apportion(label_mixture(spec, {i, j}, year),
                                        static_cast<std::uint64_t>(spec.points_per_bin));
          for (std::size_t l = 0; l < counts.size(); ++l) {
            for (std::uint64_t c = 0; c < counts[l]; ++c) {
              // Jitter stays well inside the bin so binning is unambiguous.
              const double lon = g.center_lon(i) + (unit(rng) - 0.5) * 0.9 * g.bin_width();
              const double lat = g.center_lat(j) + (unit(rng) - 0.5) * 0.9 * g.bin_height();
              out.points.push_back({lon, lat, timestamp(), static_cast<LabelId>(l)});
            }
          }
        }
      }
    } else {
      const BBox& b = g.bbox();
      for (std::uint64_t k = 0; k < spec.points_per_year; ++k) {
        const double lon = b.lon_min + unit(rng) * (b.lon_max - b.lon_min);
        const double lat = b.lat_min + unit(rng) * (b.lat_max - b.lat_min);
        const LabelId label = draw_label(label_mixture(spec, bin_point(g, lon, lat), year), unit(rng));
        out.points.push_back({lon, lat, timestamp(), label});
      }
    }
  }

  json clusters = json::array();
  for (const auto& c : spec.clusters) {
    const BinIndex center = bin_point(g, c.lon, c.lat);
    json bins = json::array();
    const auto reach = static_cast<std::int32_t>(std::floor(c.radius_bins));
    for (std::int32_t i = center.i - reach; i <= center.i + reach; ++i) {
      for (std::int32_t j = center.j - reach; j <= center.j + reach; ++j) {
        if (g.contains({i, j}) && in_cluster(c, center, {i, j})) bins.push_back({i, j});
      }
    }
    json cj = {{"label", c.label},
               {"center", {c.lon, c.lat}},
               {"center_bin", {center.i, center.j}},
               {"radius_bins", c.radius_bins},
               {"years", {c.year_from, c.year_to}},
               {"ratios", c.ratios},
               {"bins", std::move(bins)}};
    clusters.push_back(std::move(cj));
  }
  out.manifest = {{"seed", seed},
                  {"points", out.points.size()},
                  {"scenario", scenario_to_json(spec)},
                  {"clusters", std::move(clusters)}};
  return out;
}

}  // namespace emohot::io
