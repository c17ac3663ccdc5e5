#include <gtest/gtest.h>

#include "mktmem/analytics.hpp"
#include "mktmem/errors.hpp"
#include "mktmem/random.hpp"
#include "mktmem/strategy.hpp"
#include "test_support.hpp"

namespace mktmem {
namespace {

using testing::Rng;

TEST(SplitMix64, ReferenceOutputs) {
  // First outputs for seed 0 from the published reference implementation.
  SplitMix64 rng(0);
  EXPECT_EQ(rng.next(), 0xe220a8397b1dcdafULL);
  EXPECT_EQ(rng.next(), 0x6e789e6aa1b965f4ULL);
  EXPECT_EQ(rng.next(), 0x06c45d188009454fULL);
}

TEST(SplitMix64, UniformStaysInRange) {
  SplitMix64 rng(99);
  for (int i = 0; i < 10000; ++i) ASSERT_LT(rng.uniform(6), 6U);
  EXPECT_EQ(SplitMix64(3).uniform(1), 0U);
}

TEST(RandomPattern, PinnedSeedOne) {
  const std::vector<Rational> values{-3, -2, -1, 1, 2, 3};
  const auto p = random_pattern(20, values, 1);
  EXPECT_EQ(p, (DeterministicPattern{3, -2, -3, 3, 1, -1, 1, 1, -3, 2, 1, 2, -1, 2, 2, 3, 1, 3, -1, -3}));
  EXPECT_EQ(random_pattern(20, values, 1), p);
  EXPECT_NE(random_pattern(20, values, 2), p);
}

TEST(Autocorr, Examples) {
  EXPECT_EQ(autocorr1(DeterministicPattern{1, -1, 1, -1}), Rational(-1));
  EXPECT_EQ(autocorr1(DeterministicPattern{1, 1, 1, 1}), Rational(1));
  EXPECT_EQ(autocorr1(DeterministicPattern{1, 1, 1, -1}), Rational(0));
  EXPECT_EQ(autocorr1(DeterministicPattern{2, 0, -3}), Rational(-1, 3));
}

TEST(CompareGainAutocorr, Examples) {
  auto c = compare_gain_autocorr(DeterministicPattern{1, 1, 1, -1});
  EXPECT_EQ(c.optimal_gain_memory1, Rational(2));
  EXPECT_EQ(c.scaled_autocorr, Rational(0));
  EXPECT_TRUE(c.plus_minus_one);
  EXPECT_TRUE(c.inequality_holds);
  c = compare_gain_autocorr(DeterministicPattern{1, -1, 1, -1});
  EXPECT_EQ(c.optimal_gain_memory1, Rational(4));
  EXPECT_EQ(c.scaled_autocorr, Rational(4));
  c = compare_gain_autocorr(DeterministicPattern{1, 1, -1, -1});
  EXPECT_EQ(c.optimal_gain_memory1, Rational(0));
  EXPECT_EQ(c.scaled_autocorr, Rational(0));
  EXPECT_FALSE(compare_gain_autocorr(DeterministicPattern{2, -1}).plus_minus_one);
}

TEST(AnalyticsProperty, PlusMinusOneGainDominatesAutocorrelation) {
  Rng rng(73);
  for (int trial = 0; trial < 600; ++trial) {
    const auto p = testing::random_deterministic(rng, 12, testing::kPlusMinusOne);
    const auto c = compare_gain_autocorr(p);
    ASSERT_TRUE(c.plus_minus_one);
    ASSERT_TRUE(c.inequality_holds);
    ASSERT_GE(optimal_gain(p, 1), Rational(static_cast<std::int64_t>(p.size())) * abs(autocorr1(p)));
  }
}

TEST(SweepConfig, Validation) {
  SweepConfig c;
  EXPECT_NO_THROW(c.validate());
  c.count = 0;
  EXPECT_THROW(c.validate(), ValidationError);
  c = SweepConfig{};
  c.value_set.clear();
  EXPECT_THROW(c.validate(), ValidationError);
  c = SweepConfig{};
  c.memory = 0;
  EXPECT_THROW(c.validate(), ValidationError);
  EXPECT_EQ(SweepConfig{}.item_seed(4), 5U);
}

TEST(Sweep, DefaultConfigurationResults) {
  const auto r = sweep(SweepConfig{}, 2);
  ASSERT_EQ(r.items.size(), 100U);
  EXPECT_EQ(r.flagged_count, 1U);
  EXPECT_EQ(r.frequency, Rational(1, 100));
  const std::map<Rational, std::size_t> histogram{{Rational(1), 96}, {Rational(4, 3), 3}, {Rational(5, 3), 1}};
  EXPECT_EQ(r.ratio_histogram, histogram);
  EXPECT_EQ(r.undefined_ratio_count, 0U);
  for (std::size_t i = 0; i < r.items.size(); ++i) {
    EXPECT_EQ(r.items[i].index, i);
    EXPECT_EQ(r.items[i].seed, 1 + i);
  }
}

TEST(Sweep, ItemsMatchIndividualIterations) {
  SweepConfig config;
  config.count = 12;
  const auto r = sweep(config, 3);
  for (const auto& item : r.items) {
    const auto p = random_pattern(config.pattern_length, config.value_set, item.seed);
    const auto single = iterate(p, std::vector<std::size_t>(config.steps, config.memory));
    EXPECT_EQ(item.flagged, single.bubble.flagged);
    EXPECT_EQ(item.peak_ratio, single.bubble.peak_ratio);
    EXPECT_EQ(item.terminal, single.trajectory.terminal);
  }
}

TEST(Sweep, ThreadCountDoesNotMatter) {
  SweepConfig config;
  config.count = 40;
  config.seed = 777;
  const auto a = sweep(config, 1);
  for (unsigned threads : {2U, 5U, 0U}) {
    const auto b = sweep(config, threads);
    EXPECT_EQ(b.flagged_count, a.flagged_count);
    EXPECT_EQ(b.ratio_histogram, a.ratio_histogram);
    for (std::size_t i = 0; i < a.items.size(); ++i) {
      EXPECT_EQ(b.items[i].peak_ratio, a.items[i].peak_ratio);
      EXPECT_EQ(b.items[i].terminal, a.items[i].terminal);
    }
  }
}

TEST(Sweep, ZeroOnlyValuesGiveUndefinedRatios) {
  SweepConfig config;
  config.count = 3;
  config.value_set = {Rational(0)};
  const auto r = sweep(config, 1);
  EXPECT_EQ(r.undefined_ratio_count, 3U);
  EXPECT_EQ(r.flagged_count, 0U);
}

}  // namespace
}  // namespace mktmem
