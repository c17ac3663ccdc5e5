#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>

#include "mktmem/pattern.hpp"
#include "mktmem/rational.hpp"
#include "mktmem/window.hpp"

namespace mktmem {

/// Buy-and-sell (+1), abstain (0), sell-and-buy (-1).
enum class Action : std::int8_t { kSell = -1, kHold = 0, kBuy = 1 };

[[nodiscard]] constexpr int to_int(Action a) noexcept { return static_cast<int>(a); }
[[nodiscard]] Action action_from_int(int value);

/// A memory-m strategy with a finite table; contexts not in the table map to kHold.
class TabulatedStrategy {
 public:
  explicit TabulatedStrategy(std::size_t memory);

  [[nodiscard]] std::size_t memory() const noexcept { return memory_; }
  [[nodiscard]] Action action(const Context& context) const;
  /// Setting kHold erases the entry so that the table only lists trades.
  void set(const Context& context, Action action);

  [[nodiscard]] const std::map<Context, Action>& entries() const noexcept { return table_; }
  [[nodiscard]] std::size_t trade_count() const noexcept { return table_.size(); }

  friend bool operator==(const TabulatedStrategy&, const TabulatedStrategy&) = default;

 private:
  std::size_t memory_;
  std::map<Context, Action> table_;
};

/// Probability-weighted sum of next-return signs, per observed context.
/// The gain of any strategy s is the sum over contexts of s(c) * w(c).
struct ContextWeights {
  std::size_t memory = 0;
  std::map<Context, Rational> weights;

  [[nodiscard]] Rational weight(const Context& context) const;
  /// Sum of |w(c)|, i.e. the optimal gain.
  [[nodiscard]] Rational total_magnitude() const;
};

struct GainReport {
  Rational gain;
  std::map<Context, Rational> contributions;
};

[[nodiscard]] ContextWeights context_weights(const ScenarioPattern& pattern, std::size_t memory);

[[nodiscard]] GainReport gain(const TabulatedStrategy& strategy, const ScenarioPattern& pattern);

/// Trades sign(w(c)) wherever w(c) != 0 and abstains elsewhere. This maximizes the
/// gain and, among maximizers, trades on the fewest contexts.
[[nodiscard]] TabulatedStrategy optimal_strategy(const ScenarioPattern& pattern, std::size_t memory);
[[nodiscard]] TabulatedStrategy optimal_strategy(const ContextWeights& weights);

[[nodiscard]] Rational optimal_gain(const ScenarioPattern& pattern, std::size_t memory);

/// No memory-m strategy has strictly positive gain. The all-hold strategy has gain 0,
/// so this is optimal_gain == 0.
[[nodiscard]] bool is_efficient(const ScenarioPattern& pattern, std::size_t memory);

/// Smallest m in 1..max_memory at which the pattern is inefficient.
[[nodiscard]] std::optional<std::size_t> min_inefficient_memory(const ScenarioPattern& pattern,
                                                                std::size_t max_memory);

}  // namespace mktmem
