#include <gtest/gtest.h>

#include <nlohmann/json.hpp>

#include <map>

#include <sstream>

#include "cli.hpp"
#include "emohot/io/cube_file.hpp"
#include "test_util.hpp"

using nlohmann::json;
using namespace testutil;

namespace {

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun run(std::vector<std::string> args) {
  args.insert(args.begin(), "emohot");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = emohot::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> split_lines(const std::string& s) {
  std::vector<std::string> lines;
  std::istringstream in(s);
  for (std::string l; std::getline(in, l);) lines.push_back(l);
  return lines;
}

// 6x6 single-year cube: joy dominates the 2x2 corner block, "other" elsewhere.
std::string cube_text() {
  std::string text = "emohot-cube 1\ngrid 0 0 6 6 6 6\ntime 2010 1\nvocab 2 joy other\nrecords 72\n";
  for (int i = 0; i < 6; ++i) {
    for (int j = 0; j < 6; ++j) {
      const bool corner = i < 2 && j < 2;
      const std::string bin = std::to_string(i) + " " + std::to_string(j) + " 2010 ";
      text += bin + "0 " + (corner ? "9" : "1") + "\n";
      text += bin + "1 " + (corner ? "1" : "9") + "\n";
    }
  }
  return text;
}

const char* kRampSpec = R"({
  "grid": {"bbox": [-122.43, 37.74, -122.40, 37.77], "nx": 10, "ny": 10},
  "time": {"year_start": 2006, "year_count": 10},
  "vocab": ["disgust", "other"],
  "background": {"mode": "stratified", "points_per_bin": 50, "mixture": [0.2, 0.8]},
  "clusters": [{"label": "disgust", "center": [-122.4135, 37.7565], "radius_bins": 1.5,
                "years": [2006, 2015],
                "ratio_schedule": [0.1, 0.2, 0.3, 0.4, 0.5, 0.5, 0.6, 0.7, 0.8, 0.9]}]})";

}  // namespace

TEST(Cli, UsageErrors) {
  const CliRun bogus = run({"bogus"});
  EXPECT_EQ(bogus.code, emohot::cli::kExitUsage);
  EXPECT_NE(bogus.err.find("Usage"), std::string::npos);
  EXPECT_TRUE(bogus.out.empty());
  EXPECT_EQ(run({}).code, emohot::cli::kExitUsage);
  EXPECT_EQ(run({"spatial"}).code, emohot::cli::kExitUsage);
  EXPECT_EQ(run({"--help"}).code, emohot::cli::kExitOk);
}

TEST(Cli, FatalErrors) {
  TempDir dir;
  spit(dir.path() / "bad.cube", "emohot-cube 7\n");
  const CliRun r = run({"spatial", "--cube", (dir.path() / "bad.cube").string()});
  EXPECT_EQ(r.code, emohot::cli::kExitFatal);
  EXPECT_FALSE(r.err.empty());
  spit(dir.path() / "c.cube", cube_text());
  EXPECT_EQ(run({"spatial", "--cube", (dir.path() / "c.cube").string(), "--emotion", "awe"}).code,
            emohot::cli::kExitFatal);
}

TEST(Cli, SpatialWiring) {
  TempDir dir;
  spit(dir.path() / "c.cube", cube_text());
  const CliRun r = run({"spatial", "--cube", (dir.path() / "c.cube").string(), "--emotion", "joy", "--alpha", "0.05",
                     "--radius", "1"});
  ASSERT_EQ(r.code, 0) << r.err;
  const json doc = json::parse(r.out);
  ASSERT_EQ(doc["features"].size(), 36u);
  std::map<std::string, int> classes;
  for (const auto& f : doc["features"]) ++classes[f["properties"]["class"].get<std::string>()];
  EXPECT_GT(classes["hot"], 0);
  EXPECT_GT(classes["not_significant"], 0);
  for (const auto& [name, count] : classes) {
    EXPECT_TRUE(name == "hot" || name == "cold" || name == "not_significant");
  }

  // Flags override the config file.
  spit(dir.path() / "cfg.json", R"({"alpha": 0.4, "weights": {"scheme": "band", "radius": 1}})");
  const CliRun loose = run({"spatial", "--cube", (dir.path() / "c.cube").string(), "--emotion", "joy", "--config",
                         (dir.path() / "cfg.json").string()});
  const CliRun strict = run({"spatial", "--cube", (dir.path() / "c.cube").string(), "--emotion", "joy", "--config",
                          (dir.path() / "cfg.json").string(), "--alpha", "0.05"});
  ASSERT_EQ(loose.code, 0) << loose.err;
  EXPECT_EQ(strict.out, r.out);
  EXPECT_NE(loose.out, r.out);
}

TEST(Cli, SynthBinLocalRecoversRamp) {
  TempDir dir;
  const auto p = [&](const char* name) { return (dir.path() / name).string(); };
  spit(dir.path() / "spec.json", kRampSpec);
  ASSERT_EQ(run({"synth", "--spec", p("spec.json"), "--seed", "5", "--output", p("pts.csv"), "--manifest",
                 p("manifest.json")}).code, 0);
  const CliRun bin = run({"bin", "--input", p("pts.csv"), "--output", p("c.cube"), "--bbox", "-122.43,37.74,-122.40,37.77",
                       "--nx", "10", "--ny", "10", "--year-start", "2006", "--years", "10", "--vocab", "disgust,other"});
  ASSERT_EQ(bin.code, 0) << bin.err;
  EXPECT_NE(bin.err.find("accepted=50000 out_of_bbox=0 out_of_time=0 malformed=0"), std::string::npos) << bin.err;

  const json manifest = json::parse(slurp(dir.path() / "manifest.json"));
  const auto ratios = manifest["clusters"][0]["ratios"].get<std::vector<double>>();
  const auto cb = manifest["clusters"][0]["center_bin"];
  ASSERT_EQ(cb, json({5, 5}));
  // The 3x3 block of cluster bins around (5, 5): edges at -122.418..-122.409, 37.752..37.761.
  const CliRun local = run({"local", "--cube", p("c.cube"), "--bbox", "-122.418,37.752,-122.409,37.761", "--emotion",
                         "disgust"});
  ASSERT_EQ(local.code, 0) << local.err;
  const auto lines = split_lines(local.out);
  ASSERT_EQ(lines.size(), 11u);
  EXPECT_EQ(lines[0], "year,ratio,label_count,total");
  for (std::size_t y = 0; y < 10; ++y) {
    std::istringstream row(lines[y + 1]);
    std::string year, ratio, count, total;
    std::getline(row, year, ',');
    std::getline(row, ratio, ',');
    std::getline(row, count, ',');
    std::getline(row, total, ',');
    EXPECT_EQ(std::stoi(year), 2006 + static_cast<int>(y));
    EXPECT_EQ(std::stoul(total), 450u);
    EXPECT_LE(std::fabs(std::stod(ratio) - ratios[y]), 1.0 / 450.0) << lines[y + 1];
  }
}

TEST(Cli, RepeatedRunsAreByteIdentical) {
  TempDir dir;
  const auto p = [&](const char* name) { return (dir.path() / name).string(); };
  spit(dir.path() / "spec.json", kRampSpec);
  for (const char* suffix : {"a", "b"}) {
    const std::string pts = p("pts_") + suffix + ".csv", cube = p("c_") + suffix + ".cube";
    ASSERT_EQ(run({"synth", "--spec", p("spec.json"), "--seed", "9", "--output", pts}).code, 0);
    ASSERT_EQ(run({"bin", "--input", pts, "--output", cube, "--bbox", "-122.43,37.74,-122.40,37.77", "--nx", "10",
                   "--ny", "10", "--vocab", "disgust,other"}).code, 0);
    ASSERT_EQ(run({"emerging", "--cube", cube, "--emotion", "disgust", "--radius", "1.5", "--output",
                   p("e_") + suffix + ".geojson"}).code, 0);
    ASSERT_EQ(run({"spatial", "--cube", cube, "--output", p("s_") + suffix + ".geojson"}).code, 0);
  }
  for (const char* stem : {"pts_", "c_", "e_", "s_"}) {
    const std::string ext = std::string(stem) == "pts_" ? ".csv" : (std::string(stem) == "c_" ? ".cube" : ".geojson");
    EXPECT_EQ(slurp(p(stem) + std::string("a") + ext), slurp(p(stem) + std::string("b") + ext)) << stem;
  }
  const json e = json::parse(slurp(p("e_a.geojson")));
  ASSERT_FALSE(e["features"].empty());
  for (const auto& f : e["features"]) EXPECT_EQ(f["properties"]["emotion"], "disgust");
}
