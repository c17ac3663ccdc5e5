#include "mktmem/strategy.hpp"

#include <string>

#include "mktmem/errors.hpp"

namespace mktmem {

Action action_from_int(int value) {
  switch (value) {
    case -1: return Action::kSell;
    case 0: return Action::kHold;
    case 1: return Action::kBuy;
    default: throw ValidationError("action must be -1, 0 or 1, got " + std::to_string(value));
  }
}

TabulatedStrategy::TabulatedStrategy(std::size_t memory) : memory_(memory) {
  if (memory < 1) throw ValidationError("memory must be >= 1");
}

Action TabulatedStrategy::action(const Context& context) const {
  const auto it = table_.find(context);
  return it == table_.end() ? Action::kHold : it->second;
}

void TabulatedStrategy::set(const Context& context, Action action) {
  if (context.size() != memory_) {
    throw ValidationError("context " + to_string(context) + " has length " + std::to_string(context.size()) +
                          ", strategy memory is " + std::to_string(memory_));
  }
  if (action == Action::kHold) {
    table_.erase(context);
  } else {
    table_[context] = action;
  }
}

Rational ContextWeights::weight(const Context& context) const {
  const auto it = weights.find(context);
  return it == weights.end() ? Rational{} : it->second;
}

Rational ContextWeights::total_magnitude() const {
  Rational total;
  for (const auto& [ctx, w] : weights) total += abs(w);
  return total;
}

ContextWeights context_weights(const ScenarioPattern& pattern, std::size_t memory) {
  ContextWeights out;
  out.memory = memory;
  for_each_window(pattern, memory, [&](const WindowSample& sample) {
    auto& w = out.weights[sample.context];
    switch (sign(sample.target)) {
      case 1: w += sample.probability; break;
      case -1: w -= sample.probability; break;
      default: break;
    }
  });
  return out;
}

GainReport gain(const TabulatedStrategy& strategy, const ScenarioPattern& pattern) {
  const auto weights = context_weights(pattern, strategy.memory());
  GainReport report;
  for (const auto& [ctx, action] : strategy.entries()) {
    const Rational w = weights.weight(ctx);
    if (w.is_zero()) continue;
    const Rational contribution = to_int(action) == 1 ? w : -w;
    report.contributions.emplace(ctx, contribution);
    report.gain += contribution;
  }
  return report;
}

TabulatedStrategy optimal_strategy(const ContextWeights& weights) {
  TabulatedStrategy s(weights.memory);
  for (const auto& [ctx, w] : weights.weights) {
    if (const int sg = sign(w); sg != 0) s.set(ctx, action_from_int(sg));
  }
  return s;
}

TabulatedStrategy optimal_strategy(const ScenarioPattern& pattern, std::size_t memory) {
  return optimal_strategy(context_weights(pattern, memory));
}

Rational optimal_gain(const ScenarioPattern& pattern, std::size_t memory) {
  return context_weights(pattern, memory).total_magnitude();
}

bool is_efficient(const ScenarioPattern& pattern, std::size_t memory) {
  return optimal_gain(pattern, memory).is_zero();
}

std::optional<std::size_t> min_inefficient_memory(const ScenarioPattern& pattern, std::size_t max_memory) {
  if (max_memory < 1) throw ValidationError("maximum memory must be >= 1");
  for (std::size_t m = 1; m <= max_memory; ++m) {
    if (!is_efficient(pattern, m)) return m;
  }
  return std::nullopt;
}

}  // namespace mktmem
