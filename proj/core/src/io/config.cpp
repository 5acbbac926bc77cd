#include "emohot/io/config.hpp"

#include <fstream>
#include <string>

#include "emohot/error.hpp"

namespace emohot::io {

using nlohmann::json;

void RunConfig::validate() const {
  weights.validate();
  if (!(alpha > 0.0 && alpha <= 0.5)) throw ConfigError("alpha must lie in (0, 0.5]");
  if (min_years < 1) throw ConfigError("min_years must be >= 1");
  if (vocab.empty()) throw ConfigError("label vocabulary is empty");
}

GridSpec grid_from_json(const json& doc) {
  try {
    const auto& bbox = doc.at("bbox");
    if (!bbox.is_array() || bbox.size() != 4) throw ConfigError("grid.bbox needs four numbers");
    return GridSpec({bbox[0].get<double>(), bbox[1].get<double>(), bbox[2].get<double>(), bbox[3].get<double>()},
                    doc.at("nx").get<std::int32_t>(), doc.at("ny").get<std::int32_t>());
  } catch (const json::exception& e) {
    throw ConfigError(std::string("grid: ") + e.what());
  }
}

TimeAxis time_from_json(const json& doc) {
  try {
    return TimeAxis(doc.at("year_start").get<int>(), doc.at("year_count").get<int>());
  } catch (const json::exception& e) {
    throw ConfigError(std::string("time: ") + e.what());
  }
}

RunConfig config_from_json(const json& doc, RunConfig cfg) {
  if (!doc.is_object()) throw ConfigError("config root must be an object");
  try {
    if (doc.contains("grid")) cfg.grid = grid_from_json(doc["grid"]);
    if (doc.contains("time")) cfg.time = time_from_json(doc["time"]);
    if (doc.contains("vocab")) cfg.vocab = Vocabulary(doc["vocab"].get<std::vector<std::string>>());
    if (doc.contains("weights")) {
      const auto& w = doc["weights"];
      if (w.contains("scheme")) cfg.weights.scheme = parse_scheme(w["scheme"].get<std::string>());
      if (w.contains("radius")) cfg.weights.radius = w["radius"].get<double>();
      if (w.contains("k")) cfg.weights.k = w["k"].get<int>();
    }
    if (doc.contains("alpha")) cfg.alpha = doc["alpha"].get<double>();
    if (doc.contains("fdr")) cfg.fdr = doc["fdr"].get<bool>();
    if (doc.contains("min_years")) cfg.min_years = doc["min_years"].get<int>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  cfg.validate();
  return cfg;
}

json config_to_json(const RunConfig& cfg) {
  json doc;
  if (cfg.grid) {
    const BBox& b = cfg.grid->bbox();
    doc["grid"] = {{"bbox", {b.lon_min, b.lat_min, b.lon_max, b.lat_max}},
                   {"nx", cfg.grid->nx()},
                   {"ny", cfg.grid->ny()}};
  }
  doc["time"] = {{"year_start", cfg.time.year_start()}, {"year_count", cfg.time.year_count()}};
  doc["vocab"] = cfg.vocab.names();
  doc["weights"] = {{"scheme", scheme_name(cfg.weights.scheme)}, {"radius", cfg.weights.radius}, {"k", cfg.weights.k}};
  doc["alpha"] = cfg.alpha;
  doc["fdr"] = cfg.fdr;
  doc["min_years"] = cfg.min_years;
  return doc;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config '" + path.string() + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("config '" + path.string() + "': " + e.what());
  }
  return config_from_json(doc);
}

}  // namespace emohot::io
