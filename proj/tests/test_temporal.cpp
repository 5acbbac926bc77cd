#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "emohot/error.hpp"
#include "emohot/temporal.hpp"
#include "oracles.hpp"

using namespace emohot;

TEST(MannKendall, StrictlyIncreasing) {
  const std::vector<double> x = {1, 2, 3, 4, 5};
  const MKResult r = mann_kendall(x);
  EXPECT_EQ(r.s, 10);
  EXPECT_EQ(r.s, oracle::mk_s(x));
  EXPECT_NEAR(r.var_s, 16.6667, 1e-4);
  EXPECT_NEAR(r.z, 2.20454, 1e-4);
  EXPECT_NEAR(r.z, 9.0 / std::sqrt(5.0 * 4.0 * 15.0 / 18.0), 1e-12);
  EXPECT_EQ(r.trend, Trend::Increasing);
}

TEST(MannKendall, StrictlyDecreasing) {
  const MKResult r = mann_kendall(std::vector<double>{5, 4, 3, 2, 1});
  EXPECT_EQ(r.s, -10);
  EXPECT_NEAR(r.z, -2.20454, 1e-4);
  EXPECT_EQ(r.trend, Trend::Decreasing);
}

TEST(MannKendall, TieCorrection) {
  const std::vector<double> x = {1, 2, 2, 3};
  const MKResult r = mann_kendall(x);
  EXPECT_EQ(r.s, 5);
  EXPECT_EQ(r.s, oracle::mk_s(x));
  EXPECT_NEAR(r.var_s, 7.66667, 1e-4);
  EXPECT_NEAR(r.var_s, oracle::mk_var(x), 1e-12);
  EXPECT_NEAR(r.z, 1.44463, 1e-4);
  EXPECT_EQ(r.trend, Trend::None);
}

TEST(MannKendall, AllTies) {
  const MKResult r = mann_kendall(std::vector<double>{2, 2, 2, 2, 2});
  EXPECT_EQ(r.s, 0);
  EXPECT_EQ(r.var_s, 0.0);
  EXPECT_EQ(r.z, 0.0);
  EXPECT_EQ(r.trend, Trend::None);
}

TEST(MannKendall, ShortSeries) {
  EXPECT_THROW(mann_kendall(std::vector<double>{1.0}), InsufficientDataError);
  EXPECT_THROW(mann_kendall(std::vector<double>{}), InsufficientDataError);
  const MKResult r = mann_kendall(std::vector<double>{1, 2, 3});
  EXPECT_TRUE(r.too_short);
  EXPECT_EQ(r.s, 3);
  EXPECT_EQ(r.trend, Trend::None);
  EXPECT_FALSE(mann_kendall(std::vector<double>{1, 2, 3, 4}).too_short);
}

TEST(MannKendall, RejectsNonFinite) {
  EXPECT_THROW(mann_kendall(std::vector<double>{1, NAN, 3, 4}), Error);
}

TEST(MannKendall, PropertiesOnRandomSeries) {
  std::mt19937_64 rng(1945);
  std::uniform_int_distribution<int> len(2, 50), small(0, 6);
  std::normal_distribution<double> noise;
  for (int trial = 0; trial < 500; ++trial) {
    const int n = len(rng);
    std::vector<double> x(static_cast<std::size_t>(n));
    const bool tied = trial % 2 == 0;
    for (auto& v : x) v = tied ? small(rng) : noise(rng);
    const MKResult r = mann_kendall(x);

    ASSERT_EQ(r.s, oracle::mk_s(x));
    EXPECT_LE(std::abs(r.s), static_cast<std::int64_t>(n) * (n - 1) / 2);
    EXPECT_NEAR(r.var_s, oracle::mk_var(x), 1e-9);
    EXPECT_GE(r.var_s, 0.0);

    // Antisymmetry under reversal.
    std::vector<double> rev(x.rbegin(), x.rend());
    EXPECT_EQ(mann_kendall(rev).s, -r.s);

    // Rank statistic: unchanged by a strictly increasing transform.
    std::vector<double> mono = x;
    for (auto& v : mono) v = std::exp(v / 3.0) + 7.0;
    EXPECT_EQ(mann_kendall(mono).s, r.s);

    // Ties only ever lower the variance.
    const double nd = n;
    const double untied = nd * (nd - 1) * (2 * nd + 5) / 18.0;
    std::vector<double> sorted = x;
    std::sort(sorted.begin(), sorted.end());
    const bool has_ties = std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end();
    if (has_ties) {
      EXPECT_LT(r.var_s, untied);
    } else {
      EXPECT_DOUBLE_EQ(r.var_s, untied);
    }

    if (std::abs(r.s) <= 1) {
      EXPECT_EQ(r.z, 0.0);
    } else if (r.var_s > 0) {
      EXPECT_EQ(r.z > 0, r.s > 0);
      EXPECT_LT(std::fabs(r.z), std::fabs(static_cast<double>(r.s)) / std::sqrt(r.var_s));
    }
    EXPECT_NEAR(r.p, 2.0 * (1.0 - oracle::normal_cdf(std::fabs(r.z))), 1e-12);
  }
}
