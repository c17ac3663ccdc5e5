#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mktmem/pattern.hpp"
#include "mktmem/rational.hpp"
#include "mktmem/strategy.hpp"

namespace mktmem {

/// Subtracts the strategy's action from every return: out[i] = P[i] - s(window before i).
[[nodiscard]] DeterministicPattern evolve_deterministic(const DeterministicPattern& pattern,
                                                        const TabulatedStrategy& strategy);

/// Evolves every scenario outcome position-wise. Where the window reaches into
/// the previous block, the action must agree across all previous-block draws;
/// otherwise the evolved block would depend on its predecessor and
/// BoundaryDependent is thrown.
[[nodiscard]] ScenarioPattern evolve_scenario(const ScenarioPattern& pattern, const TabulatedStrategy& strategy);

[[nodiscard]] Pattern evolve(const Pattern& pattern, const TabulatedStrategy& strategy);

/// Largest |return|, over every scenario outcome for scenario patterns.
[[nodiscard]] Rational amplitude(const DeterministicPattern& pattern);
[[nodiscard]] Rational amplitude(const ScenarioPattern& pattern);
[[nodiscard]] Rational amplitude(const Pattern& pattern);

struct EvolutionStep {
  Pattern before;
  std::size_t memory;
  TabulatedStrategy strategy;
  Pattern after;
  Rational gain;  // of the strategy on `before`
  Rational amplitude_before;
  Rational amplitude_after;
};

enum class TerminalKind { kMaxSteps, kFixedPoint, kCycle };

[[nodiscard]] std::string to_string(TerminalKind kind);

/// States are numbered 0 (initial pattern) .. n (after the last step).
/// A fixed point is a cycle of length 1; first_index is the state where the
/// repeating segment starts.
struct Terminal {
  TerminalKind kind = TerminalKind::kMaxSteps;
  std::size_t first_index = 0;
  std::size_t cycle_length = 0;

  friend bool operator==(const Terminal&, const Terminal&) = default;
};

[[nodiscard]] std::string to_string(const Terminal& terminal);

struct EvolutionTrajectory {
  std::vector<EvolutionStep> steps;
  Terminal terminal;

  /// states()[0] is the initial pattern; states()[t+1] is steps[t].after.
  [[nodiscard]] std::vector<Pattern> states() const;
};

struct BubbleReport {
  std::vector<Rational> amplitudes;   // one per state
  std::optional<Rational> peak_ratio;  // max amplitude / initial amplitude; empty if initial is 0
  bool flagged = false;
  Rational threshold;
};

/// flagged iff peak_ratio >= threshold.
[[nodiscard]] BubbleReport bubble_report(std::vector<Rational> amplitudes, const Rational& threshold);

/// First repeated state in the trajectory (exact equality), or kMaxSteps if none.
[[nodiscard]] Terminal detect_cycle(const EvolutionTrajectory& trajectory);

inline const Rational kDefaultBubbleThreshold{3, 2};

struct IterateOptions {
  Rational threshold = kDefaultBubbleThreshold;
  /// Reuse the step-0 optimal strategy instead of re-optimizing every step.
  bool freeze_strategy = false;
};

struct IterationResult {
  EvolutionTrajectory trajectory;
  BubbleReport bubble;
};

/// Runs one step per schedule entry, each with the optimal strategy for that
/// memory on the current pattern. Stops early at a fixed point or cycle, but
/// only when the remaining schedule uses the same memory as the repeating
/// segment (a state repeated under a different memory proves nothing).
[[nodiscard]] IterationResult iterate(const Pattern& initial, std::span<const std::size_t> schedule,
                                      const IterateOptions& options = {});

}  // namespace mktmem
