#include "emohot/io/cube_file.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <optional>
#include <type_traits>
#include <ostream>
#include <sstream>
#include <string>

#include "emohot/error.hpp"
#include "emohot/io/points.hpp"

namespace emohot::io {

namespace {

constexpr std::string_view kMagic = "emohot-cube";
constexpr int kVersion = 1;

class Reader {
 public:
  explicit Reader(std::istream& in) : in_(in) {}

  std::string line(std::string_view expected_tag) {
    std::string l;
    if (!std::getline(in_, l)) throw ParseError("unexpected end of cube file", line_no_ + 1);
    ++line_no_;
    if (!l.empty() && l.back() == '\r') l.pop_back();
    fields_.clear();
    fields_.str(l);
    fields_.clear();
    if (!expected_tag.empty()) {
      std::string tag;
      fields_ >> tag;
      if (tag != expected_tag) fail("expected '" + std::string(expected_tag) + "'");
    }
    return l;
  }

  template <typename T>
  T next() {
    std::string tok;
    if (!(fields_ >> tok)) fail("missing field");
    T v{};
    if constexpr (std::is_same_v<T, std::string>) {
      return tok;
    } else {
      const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
      if (ec != std::errc{} || ptr != tok.data() + tok.size()) fail("bad number '" + tok + "'");
      return v;
    }
  }

  void end_of_line() {
    std::string extra;
    if (fields_ >> extra) fail("trailing field '" + extra + "'");
  }

  [[noreturn]] void fail(const std::string& what) const { throw ParseError("cube file: " + what, line_no_); }

 private:
  std::istream& in_;
  std::istringstream fields_;
  std::size_t line_no_ = 0;
};

}  // namespace

void write_cube(std::ostream& out, const SpaceTimeCube& cube) {
  const GridSpec& g = cube.grid();
  const BBox& b = g.bbox();
  out << kMagic << ' ' << kVersion << '\n';
  out << "grid " << format_double(b.lon_min) << ' ' << format_double(b.lat_min) << ' '
      << format_double(b.lon_max) << ' ' << format_double(b.lat_max) << ' ' << g.nx() << ' ' << g.ny()
      << '\n';
  out << "time " << cube.time().year_start() << ' ' << cube.time().year_count() << '\n';
  out << "vocab " << cube.vocab().size();
  for (const auto& name : cube.vocab().names()) out << ' ' << name;
  out << '\n';
  const auto records = cube.records();
  out << "records " << records.size() << '\n';
  std::string line;
  for (const auto& r : records) {
    line.clear();
    line += std::to_string(r.bin.i);
    line += ' ';
    line += std::to_string(r.bin.j);
    line += ' ';
    line += std::to_string(cube.time().year_at(r.year));
    line += ' ';
    line += std::to_string(r.label);
    line += ' ';
    line += std::to_string(r.count);
    line += '\n';
    out << line;
  }
}

SpaceTimeCube read_cube(std::istream& in) {
  Reader rd(in);
  rd.line(kMagic);
  if (rd.next<int>() != kVersion) rd.fail("unsupported version");
  rd.end_of_line();

  rd.line("grid");
  BBox bbox;
  bbox.lon_min = rd.next<double>();
  bbox.lat_min = rd.next<double>();
  bbox.lon_max = rd.next<double>();
  bbox.lat_max = rd.next<double>();
  const auto nx = rd.next<std::int32_t>();
  const auto ny = rd.next<std::int32_t>();
  rd.end_of_line();

  rd.line("time");
  const int year_start = rd.next<int>();
  const int year_count = rd.next<int>();
  rd.end_of_line();

  rd.line("vocab");
  const auto nvocab = rd.next<std::size_t>();
  std::vector<std::string> names;
  for (std::size_t k = 0; k < nvocab; ++k) names.push_back(rd.next<std::string>());
  rd.end_of_line();

  std::optional<SpaceTimeCube> header;
  try {
    header.emplace(GridSpec(bbox, nx, ny), TimeAxis(year_start, year_count), Vocabulary(std::move(names)));
  } catch (const ConfigError& e) {
    rd.fail(e.what());
  }

  rd.line("records");
  const auto nrecords = rd.next<std::size_t>();
  rd.end_of_line();
  std::vector<CountRecord> records;
  records.reserve(nrecords);
  for (std::size_t k = 0; k < nrecords; ++k) {
    rd.line("");
    CountRecord r;
    r.bin.i = rd.next<std::int32_t>();
    r.bin.j = rd.next<std::int32_t>();
    r.year = header->time().index_of(rd.next<int>());
    r.label = rd.next<LabelId>();
    r.count = rd.next<std::uint64_t>();
    rd.end_of_line();
    if (!header->grid().contains(r.bin) || r.year < 0 || r.year >= year_count ||
        r.label >= header->vocab().size()) {
      rd.fail("record outside grid, time axis or vocabulary");
    }
    records.push_back(r);
  }
  return SpaceTimeCube::from_records(header->grid(), header->time(), header->vocab(), records);
}

void save_cube(const std::filesystem::path& path, const SpaceTimeCube& cube) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  write_cube(out, cube);
  out.flush();
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

SpaceTimeCube load_cube(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  return read_cube(in);
}

}  // namespace emohot::io
