#include <benchmark/benchmark.h>

#include <map>
#include <random>
#include <sstream>

#include "emohot/emerging.hpp"
#include "emohot/io/cube_file.hpp"
#include "emohot/io/synth.hpp"

using namespace emohot;

namespace {

io::ScenarioSpec uniform(std::int32_t side, std::uint64_t per_year) {
  io::ScenarioSpec s;
  s.grid = GridSpec({-122.52, 37.70, -122.35, 37.83}, side, side);
  s.time = TimeAxis(2006, 10);
  s.mode = io::BackgroundMode::Uniform;
  s.points_per_year = per_year;
  return s;
}

const std::vector<LabeledPoint>& points(const io::ScenarioSpec& s) {
  static std::map<std::pair<std::int32_t, std::uint64_t>, std::vector<LabeledPoint>> cache;
  auto& v = cache[{s.grid.nx(), s.points_per_year}];
  if (v.empty()) v = io::synth_generate(s, 42).points;
  return v;
}

}  // namespace

static void BM_BuildCube(benchmark::State& state) {
  const auto s = uniform(1000, static_cast<std::uint64_t>(state.range(0)));
  const auto& pts = points(s);
  for (auto _ : state) benchmark::DoNotOptimize(build_cube(pts, s.grid, s.time, s.vocab));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(pts.size()));
}
BENCHMARK(BM_BuildCube)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);

static void BM_GiStarBand(benchmark::State& state) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const auto side = static_cast<std::int32_t>(state.range(0));
  RatioField f{GridSpec({0, 0, 1, 1}, side, side), {}, {}};
  for (std::int32_t i = 0; i < side; ++i) {
    for (std::int32_t j = 0; j < side; ++j) {
      if (u(rng) < 0.6) {
        f.bins.push_back({i, j});
        f.values.push_back(u(rng));
      }
    }
  }
  const auto w = WeightsSpec::band(static_cast<double>(state.range(1)));
  for (auto _ : state) benchmark::DoNotOptimize(gi_star(f, w));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(f.size()));
}
BENCHMARK(BM_GiStarBand)->Args({200, 2})->Args({200, 5})->Args({1000, 5})->Unit(benchmark::kMillisecond);

static void BM_GiStarKnn(benchmark::State& state) {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  RatioField f{GridSpec({0, 0, 1, 1}, 300, 300), {}, {}};
  for (std::int32_t i = 0; i < 300; ++i) {
    for (std::int32_t j = 0; j < 300; ++j) {
      if (u(rng) < 0.1) {
        f.bins.push_back({i, j});
        f.values.push_back(u(rng));
      }
    }
  }
  const auto w = WeightsSpec::knn(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(gi_star(f, w));
}
BENCHMARK(BM_GiStarKnn)->Arg(8)->Arg(32)->Unit(benchmark::kMillisecond);

static void BM_MannKendall(benchmark::State& state) {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> n;
  std::vector<double> x(static_cast<std::size_t>(state.range(0)));
  for (auto& v : x) v = n(rng);
  for (auto _ : state) benchmark::DoNotOptimize(mann_kendall(x));
}
BENCHMARK(BM_MannKendall)->Arg(10)->Arg(100)->Arg(10000);

static void BM_EmergingPipeline(benchmark::State& state) {
  const auto s = uniform(static_cast<std::int32_t>(state.range(0)), static_cast<std::uint64_t>(state.range(1)));
  const auto cube = build_cube(points(s), s.grid, s.time, s.vocab);
  const EmergingConfig cfg{WeightsSpec::band(5.0), 0.05, 4};
  for (auto _ : state) benchmark::DoNotOptimize(emerging_analysis(cube, 3, cfg));
}
BENCHMARK(BM_EmergingPipeline)->Args({250, 20000})->Args({1000, 100000})->Unit(benchmark::kMillisecond);

static void BM_CubeWrite(benchmark::State& state) {
  const auto s = uniform(1000, 100000);
  const auto cube = build_cube(points(s), s.grid, s.time, s.vocab);
  for (auto _ : state) {
    std::ostringstream out;
    io::write_cube(out, cube);
    benchmark::DoNotOptimize(out.str().size());
  }
}
BENCHMARK(BM_CubeWrite)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
