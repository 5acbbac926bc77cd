#include "cli.hpp"

#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "emohot/cube.hpp"
#include "emohot/emerging.hpp"
#include "emohot/error.hpp"
#include "emohot/io/config.hpp"
#include "emohot/io/cube_file.hpp"
#include "emohot/io/geojson.hpp"
#include "emohot/io/points.hpp"
#include "emohot/io/synth.hpp"
#include "emohot/local.hpp"
#include "emohot/spatial.hpp"

namespace emohot::cli {

namespace {

// Options shared by the analysis subcommands. Values only apply when given.
struct AnalysisFlags {
  std::string config;
  double alpha = 0.05;
  std::string scheme;
  double radius = 0.0;
  int k = 0;
  CLI::Option* alpha_opt = nullptr;
  CLI::Option* scheme_opt = nullptr;
  CLI::Option* radius_opt = nullptr;
  CLI::Option* k_opt = nullptr;

  void attach(CLI::App& app) {
    app.add_option("--config", config, "JSON run configuration")->check(CLI::ExistingFile);
    alpha_opt = app.add_option("--alpha", alpha, "Significance level");
    scheme_opt = app.add_option("--scheme", scheme, "Weights scheme: band, knn, contiguity");
    radius_opt = app.add_option("--radius", radius, "Band radius or contiguity order, in bins");
    k_opt = app.add_option("--k", k, "Neighborhood size for knn, self included");
  }

  io::RunConfig resolve() const {
    io::RunConfig cfg = config.empty() ? io::RunConfig{} : io::load_config(config);
    if (alpha_opt->count()) cfg.alpha = alpha;
    if (scheme_opt->count()) cfg.weights.scheme = parse_scheme(scheme);
    if (radius_opt->count()) cfg.weights.radius = radius;
    if (k_opt->count()) cfg.weights.k = k;
    cfg.validate();
    return cfg;
  }
};

// Writes to `out` for "-", else to a file.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& out) : path_(path) {
    if (path == "-") {
      stream_ = &out;
    } else {
      file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
      if (!*file_) throw IoError("cannot open '" + path + "' for writing");
      stream_ = file_.get();
    }
  }
  std::ostream& stream() { return *stream_; }
  void finish() {
    stream_->flush();
    if (!*stream_) throw IoError("failed writing '" + path_ + "'");
  }

 private:
  std::string path_;
  std::unique_ptr<std::ofstream> file_;
  std::ostream* stream_ = nullptr;
};

std::vector<LabelId> labels_for(const SpaceTimeCube& cube, const std::string& emotion) {
  if (!emotion.empty()) return {cube.vocab().id_of(emotion)};
  std::vector<LabelId> all;
  for (std::size_t l = 0; l < cube.vocab().size(); ++l) all.push_back(static_cast<LabelId>(l));
  return all;
}

BBox bbox_from(const std::vector<double>& v) {
  if (v.size() != 4) throw ConfigError("--bbox needs lon_min,lat_min,lon_max,lat_max");
  return {v[0], v[1], v[2], v[3]};
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Spatial and spatio-temporal hotspots of labeled, geotagged points", "emohot"};
  app.require_subcommand(1);

  // bin
  auto* bin = app.add_subcommand("bin", "Bin labeled points into a space-time cube file");
  std::string bin_input, bin_format, bin_output = "-", bin_config, bin_vocab;
  std::vector<double> bin_bbox;
  std::int32_t bin_nx = 0, bin_ny = 0;
  int bin_year_start = 0, bin_years = 0;
  bin->add_option("--input", bin_input, "Points file, '-' for standard input")->required();
  bin->add_option("--format", bin_format, "csv or geojson (default from extension)");
  bin->add_option("--output", bin_output, "Cube file, '-' for standard output");
  bin->add_option("--config", bin_config, "JSON run configuration")->check(CLI::ExistingFile);
  auto* bin_bbox_opt = bin->add_option("--bbox", bin_bbox, "lon_min,lat_min,lon_max,lat_max")->delimiter(',');
  auto* bin_nx_opt = bin->add_option("--nx", bin_nx, "Columns");
  auto* bin_ny_opt = bin->add_option("--ny", bin_ny, "Rows");
  auto* bin_ys_opt = bin->add_option("--year-start", bin_year_start, "First calendar year");
  auto* bin_yc_opt = bin->add_option("--years", bin_years, "Number of yearly steps");
  auto* bin_vocab_opt = bin->add_option("--vocab", bin_vocab, "Comma-separated label names");

  // spatial
  auto* spatial = app.add_subcommand("spatial", "Getis-Ord Gi* hot and cold spots as GeoJSON");
  AnalysisFlags spatial_flags;
  spatial_flags.attach(*spatial);
  std::string spatial_cube, spatial_emotion, spatial_output = "-";
  int spatial_year = 0;
  bool spatial_fdr = false;
  spatial->add_option("--cube", spatial_cube, "Cube file")->required()->check(CLI::ExistingFile);
  spatial->add_option("--emotion", spatial_emotion, "Label to analyse (default: every label)");
  auto* spatial_year_opt = spatial->add_option("--year", spatial_year, "Calendar year slice (default: all years)");
  auto* spatial_fdr_opt = spatial->add_flag("--fdr", spatial_fdr, "Benjamini-Hochberg correction");
  spatial->add_option("--output", spatial_output, "GeoJSON path, '-' for standard output");

  // emerging
  auto* emerging = app.add_subcommand("emerging", "Emerging hot spot categories as GeoJSON");
  AnalysisFlags emerging_flags;
  emerging_flags.attach(*emerging);
  std::string emerging_cube, emerging_emotion, emerging_output = "-";
  int emerging_min_years = 0;
  bool include_no_pattern = false;
  emerging->add_option("--cube", emerging_cube, "Cube file")->required()->check(CLI::ExistingFile);
  emerging->add_option("--emotion", emerging_emotion, "Label to analyse (default: every label)");
  auto* min_years_opt = emerging->add_option("--min-years", emerging_min_years, "Minimum data years per bin");
  emerging->add_flag("--include-no-pattern", include_no_pattern, "Also write bins without a pattern");
  emerging->add_option("--output", emerging_output, "GeoJSON path, '-' for standard output");

  // local
  auto* local = app.add_subcommand("local", "Yearly label ratio inside a bounding box as CSV");
  std::string local_cube, local_emotion, local_output = "-";
  std::vector<double> local_bbox;
  local->add_option("--cube", local_cube, "Cube file")->required()->check(CLI::ExistingFile);
  local->add_option("--bbox", local_bbox, "lon_min,lat_min,lon_max,lat_max")->required()->delimiter(',');
  local->add_option("--emotion", local_emotion, "Label")->required();
  local->add_option("--output", local_output, "CSV path, '-' for standard output");

  // synth
  auto* synth = app.add_subcommand("synth", "Generate synthetic labeled points from a scenario");
  std::string synth_spec, synth_output = "-", synth_manifest;
  std::uint64_t synth_seed = 0;
  synth->add_option("--spec", synth_spec, "Scenario JSON")->required()->check(CLI::ExistingFile);
  synth->add_option("--seed", synth_seed, "Random seed");
  synth->add_option("--output", synth_output, "CSV path, '-' for standard output");
  synth->add_option("--manifest", synth_manifest, "Ground-truth manifest JSON path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "emohot: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  try {
    if (*bin) {
      io::RunConfig cfg = bin_config.empty() ? io::RunConfig{} : io::load_config(bin_config);
      if (bin_bbox_opt->count() || bin_nx_opt->count() || bin_ny_opt->count()) {
        if (!cfg.grid && !(bin_bbox_opt->count() && bin_nx_opt->count() && bin_ny_opt->count())) {
          throw ConfigError("--bbox, --nx and --ny are all needed without a config grid");
        }
        const GridSpec base = cfg.grid.value_or(GridSpec{});
        cfg.grid = GridSpec(bin_bbox_opt->count() ? bbox_from(bin_bbox) : base.bbox(),
                            bin_nx_opt->count() ? bin_nx : base.nx(), bin_ny_opt->count() ? bin_ny : base.ny());
      }
      if (bin_ys_opt->count() || bin_yc_opt->count()) {
        cfg.time = TimeAxis(bin_ys_opt->count() ? bin_year_start : cfg.time.year_start(),
                            bin_yc_opt->count() ? bin_years : cfg.time.year_count());
      }
      if (bin_vocab_opt->count()) {
        std::vector<std::string> names;
        std::stringstream ss(bin_vocab);
        for (std::string name; std::getline(ss, name, ',');) names.push_back(name);
        cfg.vocab = Vocabulary(std::move(names));
      }
      if (!cfg.grid) throw ConfigError("no grid: pass --bbox/--nx/--ny or a config with a grid");

      io::PointFormat format = io::PointFormat::Csv;
      if (!bin_format.empty()) {
        format = io::parse_point_format(bin_format);
      } else if (bin_input.ends_with(".geojson") || bin_input.ends_with(".json")) {
        format = io::PointFormat::GeoJson;
      }
      io::ParsedPoints parsed;
      if (bin_input == "-") {
        parsed = io::parse_points(std::cin, format, cfg.vocab);
      } else {
        std::ifstream in(bin_input, std::ios::binary);
        if (!in) throw IoError("cannot open '" + bin_input + "'");
        parsed = io::parse_points(in, format, cfg.vocab);
      }
      SkipReport binned;
      const SpaceTimeCube cube = build_cube(parsed.points, *cfg.grid, cfg.time, cfg.vocab, &binned);
      binned.malformed += parsed.report.malformed;
      Sink sink(bin_output, out);
      io::write_cube(sink.stream(), cube);
      sink.finish();
      err << "accepted=" << binned.accepted << " out_of_bbox=" << binned.out_of_bbox
          << " out_of_time=" << binned.out_of_time << " malformed=" << binned.malformed << '\n';
      return kExitOk;
    }

    if (*spatial) {
      io::RunConfig cfg = spatial_flags.resolve();
      if (spatial_fdr_opt->count()) cfg.fdr = spatial_fdr;
      const SpaceTimeCube cube = io::load_cube(spatial_cube);
      std::optional<int> year_index;
      if (spatial_year_opt->count()) {
        if (!cube.time().contains_year(spatial_year)) {
          throw OutOfBoundsError("year " + std::to_string(spatial_year) + " outside the cube's time axis");
        }
        year_index = cube.time().index_of(spatial_year);
      }
      std::vector<io::SpatialLayer> layers;
      for (LabelId label : labels_for(cube, spatial_emotion)) {
        const RatioField field = ratio_field(cube, label, year_index);
        GiField gi = gi_star(field, cfg.weights, cfg.alpha);
        if (gi.degenerate) err << "emohot: '" << cube.vocab().name(label) << "' field is constant, no spots\n";
        if (cfg.fdr) gi.results = fdr_correct(gi.results, cfg.alpha);
        layers.push_back({cube.vocab().name(label), std::move(gi.results)});
      }
      Sink sink(spatial_output, out);
      io::write_json(sink.stream(), io::spatial_geojson(layers, cube.grid()));
      sink.finish();
      return kExitOk;
    }

    if (*emerging) {
      const io::RunConfig cfg = emerging_flags.resolve();
      EmergingConfig ecfg{cfg.weights, cfg.alpha, cfg.min_years};
      if (min_years_opt->count()) ecfg.min_years = emerging_min_years;
      const SpaceTimeCube cube = io::load_cube(emerging_cube);
      std::vector<EmergingResult> results;
      const auto labels = labels_for(cube, emerging_emotion);
      for (LabelId label : labels) results.push_back(emerging_analysis(cube, label, ecfg));
      std::vector<io::EmergingLayer> layers;
      for (std::size_t k = 0; k < labels.size(); ++k) layers.push_back({cube.vocab().name(labels[k]), &results[k]});
      Sink sink(emerging_output, out);
      io::write_json(sink.stream(), io::emerging_geojson(layers, cube.grid(), include_no_pattern));
      sink.finish();
      return kExitOk;
    }

    if (*local) {
      const SpaceTimeCube cube = io::load_cube(local_cube);
      const YearlyRatioSeries series =
          local_ratio_series(cube, {bbox_from(local_bbox), cube.vocab().id_of(local_emotion)});
      Sink sink(local_output, out);
      auto& os = sink.stream();
      os << "year,ratio,label_count,total\n";
      for (std::size_t y = 0; y < series.years.size(); ++y) {
        os << series.years[y] << ',' << (series.ratios[y] ? io::format_double(*series.ratios[y]) : "") << ','
           << series.label_counts[y] << ',' << series.denominators[y] << '\n';
      }
      sink.finish();
      return kExitOk;
    }

    if (*synth) {
      std::ifstream in(synth_spec);
      if (!in) throw IoError("cannot open '" + synth_spec + "'");
      nlohmann::json doc;
      try {
        doc = nlohmann::json::parse(in);
      } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError("scenario '" + synth_spec + "': " + e.what());
      }
      const io::ScenarioSpec spec = io::scenario_from_json(doc);
      const io::SynthOutput generated = io::synth_generate(spec, synth_seed);
      Sink sink(synth_output, out);
      io::write_points_csv(sink.stream(), generated.points, spec.vocab);
      sink.finish();
      if (!synth_manifest.empty()) io::write_json_file(synth_manifest, generated.manifest);
      return kExitOk;
    }
  } catch (const Error& e) {
    err << "emohot: " << e.what() << '\n';
    return kExitFatal;
  }
  return kExitUsage;
}

}  // namespace emohot::cli
