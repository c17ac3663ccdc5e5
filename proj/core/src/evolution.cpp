#include "mktmem/evolution.hpp"

#include <algorithm>
#include <map>
#include <string>

#include "mktmem/errors.hpp"
#include "mktmem/window.hpp"

namespace mktmem {

DeterministicPattern evolve_deterministic(const DeterministicPattern& pattern, const TabulatedStrategy& strategy) {
  std::vector<Rational> out;
  out.reserve(pattern.size());
  for (std::size_t i = 1; i <= pattern.size(); ++i) {
    const Action a = strategy.action(cyclic_window(pattern, i, strategy.memory()));
    out.push_back(pattern.at_position(i) - Rational(to_int(a)));
  }
  return DeterministicPattern(std::move(out));
}

ScenarioPattern evolve_scenario(const ScenarioPattern& pattern, const TabulatedStrategy& strategy) {
  const std::size_t p = pattern.size();
  const auto scenarios = pattern.scenarios();
  // action_at[scenario][position-1]; unset until the first window is seen.
  std::vector<std::vector<std::optional<Action>>> action_at(scenarios.size(),
                                                            std::vector<std::optional<Action>>(p));
  for_each_window(pattern, strategy.memory(), [&](const WindowSample& sample) {
    const Action a = strategy.action(sample.context);
    auto& slot = action_at[sample.scenario][sample.position - 1];
    if (!slot) {
      slot = a;
    } else if (*slot != a) {
      throw BoundaryDependent(sample.scenario, sample.position,
                              "action at position " + std::to_string(sample.position) + " of scenario " +
                                  std::to_string(sample.scenario) + " depends on the previous block");
    }
  });

  std::vector<Scenario> out;
  out.reserve(scenarios.size());
  for (std::size_t s = 0; s < scenarios.size(); ++s) {
    std::vector<Rational> values;
    values.reserve(p);
    for (std::size_t i = 0; i < p; ++i) {
      values.push_back(scenarios[s].outcome[i] - Rational(to_int(action_at[s][i].value_or(Action::kHold))));
    }
    out.push_back({scenarios[s].probability, DeterministicPattern(std::move(values))});
  }
  return ScenarioPattern(std::move(out));
}

Pattern evolve(const Pattern& pattern, const TabulatedStrategy& strategy) {
  if (const auto* det = std::get_if<DeterministicPattern>(&pattern)) return evolve_deterministic(*det, strategy);
  return evolve_scenario(std::get<ScenarioPattern>(pattern), strategy);
}

Rational amplitude(const DeterministicPattern& pattern) {
  Rational peak;
  for (const auto& v : pattern.values()) peak = std::max(peak, abs(v));
  return peak;
}

Rational amplitude(const ScenarioPattern& pattern) {
  Rational peak;
  for (const auto& s : pattern.scenarios()) peak = std::max(peak, amplitude(s.outcome));
  return peak;
}

Rational amplitude(const Pattern& pattern) {
  return std::visit([](const auto& p) { return amplitude(p); }, pattern);
}

std::string to_string(TerminalKind kind) {
  switch (kind) {
    case TerminalKind::kMaxSteps: return "max-steps";
    case TerminalKind::kFixedPoint: return "fixed-point";
    case TerminalKind::kCycle: return "cycle";
  }
  return "unknown";
}

std::string to_string(const Terminal& terminal) {
  switch (terminal.kind) {
    case TerminalKind::kMaxSteps: return "max-steps";
    case TerminalKind::kFixedPoint: return "fixed-point@" + std::to_string(terminal.first_index);
    case TerminalKind::kCycle:
      return "cycle(" + std::to_string(terminal.cycle_length) + ")@" + std::to_string(terminal.first_index);
  }
  return "unknown";
}

std::vector<Pattern> EvolutionTrajectory::states() const {
  std::vector<Pattern> out;
  if (steps.empty()) return out;
  out.reserve(steps.size() + 1);
  out.push_back(steps.front().before);
  for (const auto& step : steps) out.push_back(step.after);
  return out;
}

BubbleReport bubble_report(std::vector<Rational> amplitudes, const Rational& threshold) {
  BubbleReport report;
  report.threshold = threshold;
  report.amplitudes = std::move(amplitudes);
  if (!report.amplitudes.empty() && sign(report.amplitudes.front()) > 0) {
    const Rational peak = *std::max_element(report.amplitudes.begin(), report.amplitudes.end());
    report.peak_ratio = peak / report.amplitudes.front();
    report.flagged = *report.peak_ratio >= threshold;
  }
  return report;
}

namespace {

Terminal classify(std::size_t first, std::size_t repeat) {
  const std::size_t length = repeat - first;
  return Terminal{length == 1 ? TerminalKind::kFixedPoint : TerminalKind::kCycle, first, length};
}

}  // namespace

Terminal detect_cycle(const EvolutionTrajectory& trajectory) {
  std::map<Pattern, std::size_t> seen;
  const auto states = trajectory.states();
  for (std::size_t t = 0; t < states.size(); ++t) {
    const auto [it, inserted] = seen.try_emplace(states[t], t);
    if (!inserted) return classify(it->second, t);
  }
  return Terminal{};
}

IterationResult iterate(const Pattern& initial, std::span<const std::size_t> schedule, const IterateOptions& options) {
  if (schedule.empty()) throw ValidationError("schedule must not be empty");
  for (const auto m : schedule) {
    if (m < 1) throw ValidationError("schedule memories must be >= 1");
  }

  IterationResult result;
  auto& trajectory = result.trajectory;
  std::vector<Rational> amplitudes{amplitude(initial)};
  std::map<Pattern, std::size_t> seen{{initial, 0}};
  Pattern current = initial;
  std::optional<TabulatedStrategy> frozen;

  for (std::size_t t = 0; t < schedule.size(); ++t) {
    const std::size_t memory = frozen ? frozen->memory() : schedule[t];
    const ScenarioPattern scenarios = as_scenarios(current);
    const ContextWeights weights = context_weights(scenarios, memory);
    TabulatedStrategy strategy = frozen ? *frozen : optimal_strategy(weights);
    if (options.freeze_strategy && !frozen) frozen = strategy;

    Rational step_gain;
    if (frozen) {
      step_gain = gain(strategy, scenarios).gain;
    } else {
      step_gain = weights.total_magnitude();
    }
    Pattern next = evolve(current, strategy);
    const Rational amp_after = amplitude(next);
    amplitudes.push_back(amp_after);
    trajectory.steps.push_back(
        EvolutionStep{current, memory, std::move(strategy), next, step_gain, amplitude(current), amp_after});

    const std::size_t state = t + 1;
    const auto [it, inserted] = seen.try_emplace(next, state);
    if (!inserted) {
      const std::size_t first = it->second;
      const bool uniform = frozen || std::all_of(schedule.begin() + static_cast<std::ptrdiff_t>(first),
                                                 schedule.end(), [&](std::size_t m) { return m == memory; });
      if (uniform) {
        trajectory.terminal = classify(first, state);
        break;
      }
      it->second = state;
    }
    current = std::move(next);
  }
  result.bubble = bubble_report(std::move(amplitudes), options.threshold);
  return result;
}

}  // namespace mktmem
