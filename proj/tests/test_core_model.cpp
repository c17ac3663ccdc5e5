#include <gtest/gtest.h>

#include <map>

#include "mktmem/constructions.hpp"
#include "mktmem/errors.hpp"
#include "mktmem/window.hpp"
#include "test_support.hpp"

namespace mktmem {
namespace {

using testing::Rng;

Context ctx(std::initializer_list<Rational> values) { return Context{std::vector<Rational>(values)}; }

TEST(CyclicWindow, Examples) {
  EXPECT_EQ(cyclic_window(DeterministicPattern{-1, 1, -1, 1, -1, 1, 2}, 3, 2), ctx({-1, 1}));
  EXPECT_EQ(cyclic_window(DeterministicPattern{-2, 2, -2, 2, -2, 2, 3}, 1, 2), ctx({2, 3}));
  EXPECT_EQ(cyclic_window(DeterministicPattern{5}, 1, 3), ctx({5, 5, 5}));
}

TEST(CyclicWindow, RejectsBadArguments) {
  const DeterministicPattern p{1, 2, 3};
  EXPECT_THROW((void)cyclic_window(p, 0, 1), ValidationError);
  EXPECT_THROW((void)cyclic_window(p, 4, 1), ValidationError);
  EXPECT_THROW((void)cyclic_window(p, 1, 0), ValidationError);
}

TEST(CyclicWindowProperty, MatchesMaterializedPeriodicSequence) {
  Rng rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    const auto p = testing::random_deterministic(rng, 6, testing::kValuesWithZero);
    const std::size_t m = std::uniform_int_distribution<std::size_t>(1, 9)(rng);
    std::vector<Rational> seq;
    const std::size_t copies = m / p.size() + 2;
    for (std::size_t c = 0; c < copies; ++c) seq.insert(seq.end(), p.values().begin(), p.values().end());
    for (std::size_t i = 1; i <= p.size(); ++i) {
      const std::size_t end = (copies - 1) * p.size() + i - 1;
      const Context expected{std::vector<Rational>(seq.begin() + static_cast<std::ptrdiff_t>(end - m),
                                                   seq.begin() + static_cast<std::ptrdiff_t>(end))};
      ASSERT_EQ(cyclic_window(p, i, m), expected);
    }
  }
}

TEST(BlockEnumeration, SingleScenarioMatchesCyclicWindows) {
  const DeterministicPattern p{-2, 2, -2, 2, -2, 2, 3};
  for (std::size_t m = 1; m <= 9; ++m) {
    const auto samples = block_pair_enumeration(p, m);
    ASSERT_EQ(samples.size(), p.size());
    for (const auto& s : samples) {
      EXPECT_EQ(s.probability, Rational(1));
      EXPECT_EQ(s.context, cyclic_window(p, s.position, m));
      EXPECT_EQ(s.target, p.at_position(s.position));
    }
  }
}

TEST(BlockEnumeration, FairCoinMemoryOne) {
  const auto samples = block_pair_enumeration(fair_coin_pattern(), 1);
  ASSERT_EQ(samples.size(), 4U);
  std::map<std::pair<Rational, Rational>, Rational> seen;
  for (const auto& s : samples) {
    EXPECT_EQ(s.position, 1U);
    EXPECT_EQ(s.probability, Rational(1, 4));
    seen[{s.context.values[0], s.target}] += s.probability;
  }
  EXPECT_EQ(seen.size(), 4U);
}

TEST(BlockEnumeration, ParityPositionThreeMemoryTwo) {
  // Oracle: every (previous, current) scenario pair, window read off the concatenation.
  const auto pattern = parity_pattern(1);
  std::map<std::pair<Context, Rational>, Rational> expected;
  for (const auto& prev : pattern.scenarios()) {
    for (const auto& cur : pattern.scenarios()) {
      std::vector<Rational> seq(prev.outcome.values().begin(), prev.outcome.values().end());
      seq.insert(seq.end(), cur.outcome.values().begin(), cur.outcome.values().end());
      const Context c{{seq[3], seq[4]}};
      expected[{c, seq[5]}] += prev.probability * cur.probability;
    }
  }
  std::map<std::pair<Context, Rational>, Rational> actual;
  std::size_t count = 0;
  for (const auto& s : block_pair_enumeration(pattern, 2)) {
    if (s.position != 3) continue;
    ++count;
    EXPECT_EQ(s.probability, Rational(1, 4));
    EXPECT_EQ(s.target, s.context.values[0] * s.context.values[1]);
    actual[{s.context, s.target}] += s.probability;
  }
  EXPECT_EQ(count, 4U);
  EXPECT_EQ(actual, expected);
}

TEST(BlockEnumerationProperty, ProbabilitiesSumToOnePerPosition) {
  Rng rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const auto pattern = testing::random_scenarios(rng, 4, 3, testing::kValuesWithZero);
    const std::size_t m = std::uniform_int_distribution<std::size_t>(1, 6)(rng);
    std::map<std::size_t, Rational> totals;
    for (const auto& s : block_pair_enumeration(pattern, m)) totals[s.position] += s.probability;
    ASSERT_EQ(totals.size(), pattern.size());
    for (const auto& [pos, total] : totals) ASSERT_EQ(total, Rational(1)) << "position " << pos;
  }
}

TEST(BlockEnumeration, CapIsEnforced) {
  EXPECT_THROW(for_each_window(parity_pattern(3), 40, [](const WindowSample&) {}, 1000), CapExceeded);
}

TEST(PricePath, Examples) {
  const auto path = price_path(DeterministicPattern{-1, 1, -1, 1, -1, 1, 2}, 0);
  EXPECT_EQ(path.prices, (std::vector<Rational>{0, -1, 0, -1, 0, -1, 0, 2}));
  EXPECT_EQ(price_path(DeterministicPattern{5}, 10).prices, (std::vector<Rational>{10, 15}));
  EXPECT_EQ(price_path(DeterministicPattern{0, 0, 0}, 4).prices, (std::vector<Rational>{4, 4, 4, 4}));
}

TEST(PricePathProperty, DifferencesReproducePattern) {
  Rng rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    const auto p = testing::random_deterministic(rng, 10, testing::kValuesWithZero);
    const Rational start(std::uniform_int_distribution<int>(-5, 5)(rng), 3);
    const auto path = price_path(p, start);
    ASSERT_EQ(path.prices.size(), p.size() + 1);
    ASSERT_EQ(path.prices.front(), start);
    for (std::size_t t = 1; t < path.prices.size(); ++t) ASSERT_EQ(path.prices[t] - path.prices[t - 1], p[t - 1]);
  }
}

TEST(Validate, ReportsEveryViolation) {
  const std::vector<Scenario> bad_sum{{Rational(1, 2), DeterministicPattern{1}}, {Rational(1, 3), DeterministicPattern{-1}}};
  const auto v1 = validate(bad_sum);
  ASSERT_EQ(v1.size(), 1U);
  EXPECT_NE(v1[0].find("sum"), std::string::npos);

  const std::vector<Scenario> lengths{{Rational(1, 2), DeterministicPattern{1, 1, 1}},
                                      {Rational(1, 2), DeterministicPattern{1, 1, 1, 1}}};
  const auto v2 = validate(lengths);
  ASSERT_EQ(v2.size(), 1U);
  EXPECT_EQ(v2[0], "unequal lengths");

  const std::vector<Scenario> both{{Rational(1, 2), DeterministicPattern{1}}, {Rational(1, 3), DeterministicPattern{1, 2}}};
  EXPECT_EQ(validate(both).size(), 2U);

  EXPECT_TRUE(validate(fair_coin_pattern().scenarios()).empty());
  EXPECT_THROW(ScenarioPattern{bad_sum}, ValidationError);
  EXPECT_THROW(DeterministicPattern(std::vector<Rational>{}), ValidationError);
}

TEST(ScenarioPattern, EqualityUsesCanonicalMergedForm) {
  const ScenarioPattern split({{Rational(1, 4), DeterministicPattern{1}},
                               {Rational(1, 2), DeterministicPattern{-1}},
                               {Rational(1, 4), DeterministicPattern{1}}});
  EXPECT_EQ(split, fair_coin_pattern());
  EXPECT_EQ(split.scenario_count(), 3U);
  EXPECT_EQ(split.canonical().size(), 2U);
  EXPECT_TRUE(ScenarioPattern(DeterministicPattern{1, 2}).is_deterministic());
}

}  // namespace
}  // namespace mktmem
