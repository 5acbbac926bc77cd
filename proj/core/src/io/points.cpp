#include "emohot/io/points.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <string>

#include <nlohmann/json.hpp>

#include "emohot/error.hpp"
#include "emohot/io/timestamp.hpp"

namespace emohot::io {

PointFormat parse_point_format(std::string_view name) {
  if (name == "csv") return PointFormat::Csv;
  if (name == "geojson") return PointFormat::GeoJson;
  throw ConfigError("unknown point format '" + std::string(name) + "'");
}

std::string format_double(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

bool parse_double(std::string_view s, double& out) {
  if (s.empty()) return false;
  if (s.front() == '+') s.remove_prefix(1);
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc{} && ptr == s.data() + s.size() && std::isfinite(out);
}

bool valid_coordinates(double lon, double lat) {
  return lon >= -180.0 && lon <= 180.0 && lat >= -90.0 && lat <= 90.0;
}

bool parse_csv_record(std::string_view line, const Vocabulary& vocab, LabeledPoint& p) {
  std::string_view fields[4];
  std::size_t count = 0;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    if (count == 4) return false;
    fields[count++] = trim(line.substr(start, comma == std::string_view::npos ? comma : comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  if (count != 4) return false;
  if (!parse_double(fields[0], p.lon) || !parse_double(fields[1], p.lat)) return false;
  if (!valid_coordinates(p.lon, p.lat)) return false;
  const auto ts = parse_timestamp(fields[2]);
  if (!ts) return false;
  p.timestamp = *ts;
  return vocab.find(fields[3], p.label);
}

ParsedPoints parse_csv(std::istream& in, const Vocabulary& vocab) {
  ParsedPoints out;
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view = line;
    if (line_no == 1 && view.substr(0, 3) == "\xEF\xBB\xBF") view.remove_prefix(3);
    view = trim(view);
    if (!have_header) {
      std::string header;
      for (char c : view) {
        if (c != ' ' && c != '\t') header.push_back(c);
      }
      if (header != "lon,lat,timestamp,label") {
        throw ParseError("expected CSV header 'lon,lat,timestamp,label'", line_no);
      }
      have_header = true;
      continue;
    }
    if (view.empty()) continue;
    LabeledPoint p;
    if (parse_csv_record(view, vocab, p)) {
      out.points.push_back(p);
    } else {
      ++out.report.malformed;
    }
  }
  if (in.bad()) throw ParseError("read failure on point stream", line_no);
  if (!have_header) throw ParseError("missing CSV header 'lon,lat,timestamp,label'", 1);
  out.report.accepted = out.points.size();
  return out;
}

bool parse_feature(const nlohmann::json& f, const Vocabulary& vocab, LabeledPoint& p) {
  if (!f.is_object() || f.value("type", "") != "Feature") return false;
  const auto geom = f.find("geometry");
  const auto props = f.find("properties");
  if (geom == f.end() || props == f.end() || !geom->is_object() || !props->is_object()) return false;
  if (geom->value("type", "") != "Point") return false;
  const auto coords = geom->find("coordinates");
  if (coords == geom->end() || !coords->is_array() || coords->size() < 2 || !(*coords)[0].is_number() ||
      !(*coords)[1].is_number()) {
    return false;
  }
  p.lon = (*coords)[0].get<double>();
  p.lat = (*coords)[1].get<double>();
  if (!std::isfinite(p.lon) || !std::isfinite(p.lat) || !valid_coordinates(p.lon, p.lat)) return false;

  const auto ts = props->find("timestamp");
  if (ts == props->end()) return false;
  if (ts->is_number_integer()) {
    p.timestamp = ts->get<UnixSeconds>();
  } else if (ts->is_string()) {
    const auto parsed = parse_timestamp(ts->get_ref<const std::string&>());
    if (!parsed) return false;
    p.timestamp = *parsed;
  } else {
    return false;
  }
  const auto label = props->find("label");
  if (label == props->end() || !label->is_string()) return false;
  return vocab.find(label->get_ref<const std::string&>(), p.label);
}

ParsedPoints parse_geojson(std::istream& in, const Vocabulary& vocab) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("invalid GeoJSON: ") + e.what(), 0, e.byte);
  }
  if (!doc.is_object() || doc.value("type", "") != "FeatureCollection" || !doc.contains("features") ||
      !doc["features"].is_array()) {
    throw ParseError("GeoJSON root must be a FeatureCollection with a features array", 0);
  }
  ParsedPoints out;
  for (const auto& f : doc["features"]) {
    LabeledPoint p;
    if (parse_feature(f, vocab, p)) {
      out.points.push_back(p);
    } else {
      ++out.report.malformed;
    }
  }
  out.report.accepted = out.points.size();
  return out;
}

}  // namespace

ParsedPoints parse_points(std::istream& in, PointFormat format, const Vocabulary& vocab) {
  if (!in) throw ParseError("unreadable point stream", 0);
  return format == PointFormat::Csv ? parse_csv(in, vocab) : parse_geojson(in, vocab);
}

void write_points_csv(std::ostream& out, std::span<const LabeledPoint> points, const Vocabulary& vocab) {
  out << "lon,lat,timestamp,label\n";
  std::string line;
  for (const auto& p : points) {
    line.clear();
    line += format_double(p.lon);
    line += ',';
    line += format_double(p.lat);
    line += ',';
    line += format_timestamp(p.timestamp);
    line += ',';
    line += vocab.name(p.label);
    line += '\n';
    out << line;
  }
}

}  // namespace emohot::io
