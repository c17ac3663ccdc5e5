#include <gtest/gtest.h>

#include <algorithm>

#include "mktmem/constructions.hpp"
#include "mktmem/errors.hpp"
#include "mktmem/evolution.hpp"
#include "test_support.hpp"

namespace mktmem {
namespace {

using testing::Rng;

const DeterministicPattern kFig2{-2, 2, -2, 2, -2, 2, 3};

const DeterministicPattern& det(const Pattern& p) { return std::get<DeterministicPattern>(p); }

ScenarioPattern repeated_coin() {
  return ScenarioPattern({{Rational(1, 2), DeterministicPattern{1, 1}}, {Rational(1, 2), DeterministicPattern{-1, -1}}});
}

TEST(Evolve, FigureChain) {
  const auto step1 = evolve_deterministic(kFig2, optimal_strategy(kFig2, 2));
  EXPECT_EQ(step1, (DeterministicPattern{-1, 1, -1, 1, -1, 1, 4}));
  const auto step2 = evolve_deterministic(step1, optimal_strategy(step1, 2));
  EXPECT_EQ(step2, (DeterministicPattern{0, 0, 0, 0, 0, 0, 5}));
  EXPECT_EQ(evolve_deterministic(kFig2, optimal_strategy(kFig2, 3)), (DeterministicPattern{-1, 1, -1, 1, -2, 1, 3}));
}

TEST(Evolve, EmptyStrategyIsIdentity) {
  EXPECT_EQ(evolve_deterministic(kFig2, TabulatedStrategy(4)), kFig2);
  EXPECT_EQ(evolve_scenario(parity_pattern(2), TabulatedStrategy(2)), parity_pattern(2));
}

TEST(Evolve, EfficientPatternIsFixed) {
  const ScenarioPattern coin = fair_coin_pattern();
  for (std::size_t m = 1; m <= 5; ++m) EXPECT_EQ(evolve_scenario(coin, optimal_strategy(coin, m)), coin) << m;
}

TEST(Evolve, DispatchesOnPatternKind) {
  const auto s = optimal_strategy(kFig2, 2);
  EXPECT_EQ(det(evolve(Pattern(kFig2), s)), evolve_deterministic(kFig2, s));
  EXPECT_TRUE(std::holds_alternative<ScenarioPattern>(evolve(Pattern(fair_coin_pattern()), s)));
}

TEST(EvolveScenario, RepeatedVariableIsBoundaryDependent) {
  const auto pattern = repeated_coin();
  const auto s = optimal_strategy(pattern, 1);
  EXPECT_EQ(s.action(Context{{1}}), Action::kBuy);
  try {
    (void)evolve_scenario(pattern, s);
    FAIL() << "expected BoundaryDependent";
  } catch (const BoundaryDependent& e) {
    EXPECT_EQ(e.position(), 1U);
  }
}

// Which entries change and how, under each agent's optimal strategy.
TEST(EvolveScenario, FeedoffTouchesOnlyTheExploitedEntries) {
  const FeedoffParams params;
  const auto [first_b, second_b] = feedoff_b_positions(params);
  EXPECT_EQ(first_b, 3U);
  EXPECT_EQ(second_b, 10U);
  const auto p = feedoff_pattern(params);

  auto changed_positions = [&](const ScenarioPattern& evolved) {
    std::vector<std::size_t> out;
    for (std::size_t i = 1; i <= p.size(); ++i) {
      bool changed = false;
      for (std::size_t k = 0; k < p.scenario_count(); ++k) {
        const auto before = p.scenario(k).outcome.at_position(i);
        const auto after = evolved.scenario(k).outcome.at_position(i);
        if (before != after) {
          changed = true;
          EXPECT_EQ(abs(before), params.b) << i;
          EXPECT_EQ(abs(after), params.b - Rational(1)) << i;
          EXPECT_EQ(sign(after), sign(before)) << i;
        }
      }
      if (changed) out.push_back(i);
    }
    return out;
  };
  EXPECT_EQ(changed_positions(evolve_scenario(p, optimal_strategy(p, params.m))), std::vector<std::size_t>({3}));
  EXPECT_EQ(changed_positions(evolve_scenario(p, optimal_strategy(p, params.m_prime))),
            std::vector<std::size_t>({3, 10}));
}

TEST(Amplitude, Examples) {
  EXPECT_EQ(amplitude(kFig2), Rational(3));
  EXPECT_EQ(amplitude(DeterministicPattern{0, 0}), Rational(0));
  EXPECT_EQ(amplitude(feedoff_pattern(FeedoffParams{})), Rational(40));
  EXPECT_EQ(amplitude(Pattern(fair_coin_pattern())), Rational(1));
}

TEST(BubbleReport, Flagging) {
  const auto r = bubble_report({3, 4, 5}, kDefaultBubbleThreshold);
  EXPECT_EQ(r.peak_ratio, std::optional<Rational>(Rational(5, 3)));
  EXPECT_TRUE(r.flagged);
  EXPECT_TRUE(bubble_report({2, 2, 3}, Rational(3, 2)).flagged);
  EXPECT_FALSE(bubble_report({2, 2, 2}, Rational(3, 2)).flagged);
  const auto zero = bubble_report({0, 0, 1}, kDefaultBubbleThreshold);
  EXPECT_FALSE(zero.peak_ratio.has_value());
  EXPECT_FALSE(zero.flagged);
}

TEST(Iterate, BubbleChain) {
  const std::vector<std::size_t> schedule{2, 2};
  const auto result = iterate(kFig2, schedule);
  const auto states = result.trajectory.states();
  ASSERT_EQ(states.size(), 3U);
  EXPECT_EQ(det(states[1]), (DeterministicPattern{-1, 1, -1, 1, -1, 1, 4}));
  EXPECT_EQ(det(states[2]), (DeterministicPattern{0, 0, 0, 0, 0, 0, 5}));
  EXPECT_EQ(result.bubble.amplitudes, (std::vector<Rational>{3, 4, 5}));
  EXPECT_TRUE(result.bubble.flagged);
  EXPECT_EQ(result.trajectory.terminal.kind, TerminalKind::kMaxSteps);
  EXPECT_EQ(result.trajectory.steps[0].gain, Rational(5));
  EXPECT_EQ(result.trajectory.steps[0].amplitude_after, Rational(4));
}

TEST(Iterate, MemoryThreeDoesNotBubble) {
  const std::vector<std::size_t> schedule{3};
  const auto result = iterate(kFig2, schedule);
  EXPECT_EQ(result.bubble.amplitudes, (std::vector<Rational>{3, 3}));
  EXPECT_FALSE(result.bubble.flagged);
}

TEST(Iterate, StopsAtFixedPoint) {
  const std::vector<std::size_t> schedule(6, 1);
  const auto result = iterate(DeterministicPattern{1, 1, -1, -1}, schedule);
  EXPECT_EQ(result.trajectory.steps.size(), 1U);
  EXPECT_EQ(result.trajectory.terminal, (Terminal{TerminalKind::kFixedPoint, 0, 1}));
  EXPECT_EQ(to_string(result.trajectory.terminal), "fixed-point@0");
}

TEST(Iterate, StopsAtTwoCycle) {
  const std::vector<std::size_t> schedule(8, 2);
  const auto result = iterate(DeterministicPattern{0, 0, 0, 0, 0, 0, 5}, schedule);
  EXPECT_EQ(result.trajectory.steps.size(), 2U);
  EXPECT_EQ(det(result.trajectory.states()[1]), (DeterministicPattern{0, 0, -1, -1, -1, -1, 4}));
  EXPECT_EQ(result.trajectory.terminal, (Terminal{TerminalKind::kCycle, 0, 2}));
  EXPECT_EQ(to_string(result.trajectory.terminal), "cycle(2)@0");
  EXPECT_EQ(detect_cycle(result.trajectory), result.trajectory.terminal);
}

TEST(Iterate, RepeatUnderDifferentMemoryDoesNotStop) {
  // State 2 equals state 0, but the schedule switches memory afterwards.
  const std::vector<std::size_t> schedule{2, 2, 3};
  const auto result = iterate(DeterministicPattern{0, 0, 0, 0, 0, 0, 5}, schedule);
  EXPECT_EQ(result.trajectory.steps.size(), 3U);
}

TEST(Iterate, FrozenStrategyReusesStepZero) {
  const std::vector<std::size_t> schedule{2, 2};
  IterateOptions options;
  options.freeze_strategy = true;
  const auto result = iterate(kFig2, schedule, options);
  const auto s0 = optimal_strategy(kFig2, 2);
  EXPECT_EQ(result.trajectory.steps[1].strategy, s0);
  const auto step1 = evolve_deterministic(kFig2, s0);
  EXPECT_EQ(det(result.trajectory.states()[2]), evolve_deterministic(step1, s0));
  EXPECT_EQ(result.trajectory.steps[1].gain, gain(s0, step1).gain);
}

TEST(Iterate, RejectsBadSchedules) {
  EXPECT_THROW((void)iterate(kFig2, std::vector<std::size_t>{}), ValidationError);
  EXPECT_THROW((void)iterate(kFig2, std::vector<std::size_t>{2, 0}), ValidationError);
}

TEST(Iterate, AllZeroPatternHasUndefinedRatio) {
  const auto result = iterate(DeterministicPattern{0, 0, 0}, std::vector<std::size_t>{1, 1});
  EXPECT_FALSE(result.bubble.peak_ratio.has_value());
  EXPECT_FALSE(result.bubble.flagged);
  EXPECT_EQ(result.trajectory.terminal.kind, TerminalKind::kFixedPoint);
}

EvolutionStep step(const DeterministicPattern& before, const DeterministicPattern& after) {
  return EvolutionStep{before, 1, TabulatedStrategy(1), after, Rational(0), amplitude(before), amplitude(after)};
}

TEST(DetectCycle, HandBuiltTrajectories) {
  const DeterministicPattern a{1}, b{2}, c{3};
  EvolutionTrajectory t;
  t.steps = {step(a, b), step(b, c), step(c, b)};
  EXPECT_EQ(detect_cycle(t), (Terminal{TerminalKind::kCycle, 1, 2}));
  t.steps = {step(a, b), step(b, b)};
  EXPECT_EQ(detect_cycle(t), (Terminal{TerminalKind::kFixedPoint, 1, 1}));
  t.steps = {step(a, b), step(b, c)};
  EXPECT_EQ(detect_cycle(t).kind, TerminalKind::kMaxSteps);
  t.steps.clear();
  EXPECT_EQ(detect_cycle(t).kind, TerminalKind::kMaxSteps);
}

TEST(DetectCycle, ReportedTerminalsRepeatExactly) {
  std::size_t cycles = 0;
  for (std::size_t len = 1; len <= 6; ++len) {
    for (std::uint32_t bits = 0; bits < (1U << len); ++bits) {
      std::vector<Rational> v;
      for (std::size_t j = 0; j < len; ++j) v.emplace_back(((bits >> j) & 1U) != 0 ? -1 : 1);
      for (std::size_t m = 1; m <= 3; ++m) {
        const auto r = iterate(DeterministicPattern(v), std::vector<std::size_t>(8, m));
        const auto& term = r.trajectory.terminal;
        ASSERT_EQ(detect_cycle(r.trajectory), term);
        if (term.kind == TerminalKind::kMaxSteps) continue;
        const auto states = r.trajectory.states();
        ASSERT_EQ(term.first_index + term.cycle_length + 1, states.size());
        ASSERT_EQ(states[term.first_index], states.back());
        for (std::size_t k = term.first_index + 1; k + 1 < states.size(); ++k) ASSERT_NE(states[k], states.back());
        ASSERT_EQ(term.kind == TerminalKind::kFixedPoint, term.cycle_length == 1);
        cycles += term.kind == TerminalKind::kCycle ? 1 : 0;
      }
    }
  }
  EXPECT_GT(cycles, 0U);
}

TEST(EvolutionProperty, MatchesLiteralSequence) {
  Rng rng(61);
  for (int trial = 0; trial < 500; ++trial) {
    const auto p = testing::random_deterministic(rng, 7, testing::kValuesWithZero);
    const std::size_t m = std::uniform_int_distribution<std::size_t>(1, 9)(rng);
    const auto s = trial % 2 == 0 ? optimal_strategy(p, m) : testing::random_strategy(rng, testing::direct_weights(p, m), m);
    ASSERT_EQ(evolve_deterministic(p, s), testing::direct_evolve(p, s));
    ASSERT_EQ(evolve_scenario(ScenarioPattern(p), s), ScenarioPattern(evolve_deterministic(p, s)));
  }
}

// When evolve_scenario succeeds, every realized block evolves to the evolved outcome
// of its scenario; when it throws, some realized block disagrees.
TEST(EvolutionProperty, ScenarioEvolutionMatchesRealizations) {
  Rng rng(67);
  int checked = 0;
  int raised = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const auto p = testing::random_scenarios(rng, 3, 3, testing::kSmallValues);
    const std::size_t m = std::uniform_int_distribution<std::size_t>(1, 3)(rng);
    const auto s = optimal_strategy(p, m);
    const std::size_t back = testing::back_blocks(m, p.size());
    const auto reals = testing::realizations(p, back);

    auto evolved_current = [&](const testing::Realization& r) {
      std::vector<Rational> out;
      for (std::size_t i = 0; i < p.size(); ++i) {
        const std::size_t idx = back * p.size() + i;
        Context ctx{std::vector<Rational>(r.sequence.begin() + static_cast<std::ptrdiff_t>(idx - m),
                                          r.sequence.begin() + static_cast<std::ptrdiff_t>(idx))};
        out.push_back(r.sequence[idx] - Rational(to_int(s.action(ctx))));
      }
      return DeterministicPattern(std::move(out));
    };

    try {
      const auto evolved = evolve_scenario(p, s);
      for (const auto& r : reals) ASSERT_EQ(evolved_current(r), evolved.scenario(r.current_scenario).outcome);
      ASSERT_EQ(evolved.scenario_count(), p.scenario_count());
      ++checked;
    } catch (const BoundaryDependent& e) {
      bool disagree = false;
      for (const auto& r1 : reals) {
        for (const auto& r2 : reals) {
          if (r1.current_scenario == r2.current_scenario && evolved_current(r1) != evolved_current(r2)) disagree = true;
        }
      }
      ASSERT_TRUE(disagree);
      ++raised;
    }
  }
  EXPECT_GT(checked, 0);
  EXPECT_GT(raised, 0);
}

TEST(EvolutionProperty, IterationBookkeeping) {
  Rng rng(71);
  for (int trial = 0; trial < 200; ++trial) {
    const auto p = testing::random_deterministic(rng, 8, testing::kSmallValues);
    std::vector<std::size_t> schedule(std::uniform_int_distribution<std::size_t>(1, 5)(rng));
    for (auto& m : schedule) m = std::uniform_int_distribution<std::size_t>(1, 3)(rng);
    const auto result = iterate(p, schedule);
    const auto states = result.trajectory.states();
    ASSERT_EQ(states.size(), result.trajectory.steps.size() + 1);
    ASSERT_EQ(result.bubble.amplitudes.size(), states.size());
    for (std::size_t t = 0; t < result.trajectory.steps.size(); ++t) {
      const auto& st = result.trajectory.steps[t];
      ASSERT_EQ(st.memory, schedule[t]);
      ASSERT_EQ(st.gain, optimal_gain(det(st.before), st.memory));
      ASSERT_EQ(det(st.after), testing::direct_evolve(det(st.before), st.strategy));
      ASSERT_EQ(result.bubble.amplitudes[t + 1], amplitude(st.after));
    }
    if (result.trajectory.steps.size() < schedule.size()) {
      ASSERT_NE(result.trajectory.terminal.kind, TerminalKind::kMaxSteps);
    }
  }
}

}  // namespace
}  // namespace mktmem
