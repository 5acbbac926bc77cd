#include <gtest/gtest.h>

#include <sstream>

#include "emohot/emerging.hpp"
#include "emohot/error.hpp"
#include "emohot/io/points.hpp"
#include "emohot/io/synth.hpp"

using namespace emohot;

namespace {

io::ScenarioSpec uniform_spec(std::uint64_t per_year) {
  io::ScenarioSpec s;
  s.grid = GridSpec({0, 0, 10, 10}, 20, 20);
  s.time = TimeAxis(2006, 10);
  s.mode = io::BackgroundMode::Uniform;
  s.points_per_year = per_year;
  return s;
}

}  // namespace

TEST(Apportion, LargestRemainder) {
  EXPECT_EQ(io::apportion({1, 1, 1}, 10), (std::vector<std::uint64_t>{4, 3, 3}));
  EXPECT_EQ(io::apportion({0.75, 0.05, 0.05, 0.05, 0.05, 0.05}, 12),
            (std::vector<std::uint64_t>{9, 1, 1, 1, 0, 0}));
  EXPECT_EQ(io::apportion({0.3, 0.7}, 10), (std::vector<std::uint64_t>{3, 7}));
  EXPECT_EQ(io::apportion({1, 0}, 0), (std::vector<std::uint64_t>{0, 0}));
}

TEST(Synth, UniformLabelsWithinThreeSigma) {
  const auto out = io::synth_generate(uniform_spec(6000), 7);
  ASSERT_EQ(out.points.size(), 60000u);
  std::vector<double> counts(6, 0.0);
  for (const auto& p : out.points) counts[p.label] += 1.0;
  const double n = 60000, q = 1.0 / 6.0, sigma = std::sqrt(n * q * (1 - q));
  for (double c : counts) EXPECT_LE(std::fabs(c - n * q), 3 * sigma);
}

TEST(Synth, SameSeedSameBytes) {
  auto spec = uniform_spec(500);
  spec.clusters.push_back({"joy", 5.0, 5.0, 2.0, 2010, 2012, {0.8}});
  auto render = [&](std::uint64_t seed) {
    std::ostringstream o;
    const auto out = io::synth_generate(spec, seed);
    io::write_points_csv(o, out.points, spec.vocab);
    return o.str() + out.manifest.dump();
  };
  EXPECT_EQ(render(11), render(11));
  EXPECT_NE(render(11), render(12));
}

TEST(Synth, StratifiedCountsAndManifest) {
  io::ScenarioSpec s;
  s.grid = GridSpec({0, 0, 5, 5}, 5, 5);
  s.time = TimeAxis(2006, 10);
  s.points_per_bin = 20;
  s.clusters.push_back({"joy", 2.5, 2.5, 1.0, 2013, 2015, {0.8}});
  const auto out = io::synth_generate(s, 1);
  EXPECT_EQ(out.points.size(), 25u * 10u * 20u);
  EXPECT_EQ(out.manifest["points"], out.points.size());
  const auto& c = out.manifest["clusters"][0];
  EXPECT_EQ(c["center_bin"], nlohmann::json({2, 2}));
  EXPECT_EQ(c["bins"].size(), 5u);

  const auto cube = build_cube(out.points, s.grid, s.time, s.vocab);
  EXPECT_EQ(cube.total_points(), out.points.size());
  const LabelId joy = s.vocab.id_of("joy");
  EXPECT_EQ(cube.count({2, 2}, 7, joy), 16u);
  EXPECT_EQ(cube.count({2, 3}, 8, joy), 16u);
  // 20 over six equal weights: 3 each, the two leftovers go to the lowest labels.
  EXPECT_EQ(cube.count({2, 2}, 6, joy), 3u);
  EXPECT_EQ(cube.count({0, 0}, 9, s.vocab.id_of("anger")), 4u);
  EXPECT_EQ(cube.count({0, 0}, 9, joy), 3u);
  EXPECT_EQ(cube.total({0, 0}, 9), 20u);
}

TEST(Synth, ScheduleAndSpecRoundTrip) {
  const auto doc = nlohmann::json::parse(R"({
    "grid": {"bbox": [0, 0, 10, 10], "nx": 10, "ny": 10},
    "time": {"year_start": 2006, "year_count": 10},
    "vocab": ["disgust", "other"],
    "background": {"mode": "stratified", "points_per_bin": 90, "mixture": [0.1, 0.9]},
    "clusters": [{"label": "disgust", "center": [5, 5], "radius_bins": 1.5, "years": [2006, 2015],
                  "ratio_schedule": [0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 0.9]}]})");
  const auto spec = io::scenario_from_json(doc);
  EXPECT_EQ(spec.clusters[0].ratio_for(2009), 0.4);
  EXPECT_EQ(io::scenario_to_json(io::scenario_from_json(io::scenario_to_json(spec))), io::scenario_to_json(spec));
  EXPECT_EQ(io::label_mixture(spec, {5, 5}, 2010)[0], 0.5);
  EXPECT_EQ(io::label_mixture(spec, {0, 0}, 2010)[0], 0.1);
}

TEST(Synth, InvalidSpecs) {
  auto s = uniform_spec(10);
  s.clusters.push_back({"joy", 5, 5, 1, 2000, 2001, {0.5}});
  EXPECT_THROW(io::synth_generate(s, 1), ConfigError);
  s = uniform_spec(10);
  s.clusters.push_back({"boredom", 5, 5, 1, 2006, 2007, {0.5}});
  EXPECT_THROW(io::synth_generate(s, 1), ConfigError);
  s = uniform_spec(10);
  s.clusters.push_back({"joy", 5, 5, 1, 2006, 2007, {0.5, 0.6, 0.7}});
  EXPECT_THROW(io::synth_generate(s, 1), ConfigError);
  s = uniform_spec(10);
  s.mixture = {1, 2};
  EXPECT_THROW(io::synth_generate(s, 1), ConfigError);
}

TEST(Synth, InjectedClusterIsConsecutiveHotAtManifestCenter) {
  io::ScenarioSpec s;
  s.grid = GridSpec({0, 0, 25, 25}, 25, 25);
  s.time = TimeAxis(2006, 10);
  s.clusters.push_back({"joy", 12.5, 12.5, 2.0, 2013, 2015, {0.75}});
  const auto out = io::synth_generate(s, 3);
  const auto cube = build_cube(out.points, s.grid, s.time, s.vocab);
  const auto result = emerging_analysis(cube, s.vocab.id_of("joy"), {WeightsSpec::band(2.0), 0.05, 4});
  const auto cb = out.manifest["clusters"][0]["center_bin"];
  const EmergingBin* center = result.find({cb[0].get<int>(), cb[1].get<int>()});
  ASSERT_NE(center, nullptr);
  EXPECT_EQ(center->pattern, EmergingPattern::ConsecutiveHot);
}
