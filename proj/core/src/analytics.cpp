#include "mktmem/analytics.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <thread>

#include "mktmem/errors.hpp"
#include "mktmem/random.hpp"
#include "mktmem/strategy.hpp"

namespace mktmem {

Rational autocorr1(const DeterministicPattern& pattern) {
  const std::size_t p = pattern.size();
  std::int64_t total = 0;
  for (std::size_t i = 0; i < p; ++i) total += sign(pattern[i]) * sign(pattern[(i + 1) % p]);
  return Rational(total, static_cast<std::int64_t>(p));
}

GainAutocorrComparison compare_gain_autocorr(const DeterministicPattern& pattern) {
  GainAutocorrComparison out;
  out.optimal_gain_memory1 = optimal_gain(pattern, 1);
  out.scaled_autocorr = abs(autocorr1(pattern)) * Rational(static_cast<std::int64_t>(pattern.size()));
  out.plus_minus_one = std::all_of(pattern.values().begin(), pattern.values().end(),
                                   [](const Rational& v) { return abs(v) == Rational(1); });
  out.inequality_holds = out.optimal_gain_memory1 >= out.scaled_autocorr;
  return out;
}

DeterministicPattern random_pattern(std::size_t length, std::span<const Rational> value_set, std::uint64_t seed) {
  if (length < 1) throw ValidationError("pattern length must be >= 1");
  if (value_set.empty()) throw ValidationError("value set must not be empty");
  SplitMix64 rng(seed);
  std::vector<Rational> values;
  values.reserve(length);
  for (std::size_t i = 0; i < length; ++i) values.push_back(value_set[rng.uniform(value_set.size())]);
  return DeterministicPattern(std::move(values));
}

void SweepConfig::validate() const {
  std::vector<std::string> violations;
  if (count < 1) violations.emplace_back("count must be >= 1");
  if (pattern_length < 1) violations.emplace_back("pattern length must be >= 1");
  if (steps < 1) violations.emplace_back("steps must be >= 1");
  if (memory < 1) violations.emplace_back("memory must be >= 1");
  if (value_set.empty()) violations.emplace_back("value set must not be empty");
  if (!violations.empty()) throw ValidationError("invalid sweep configuration", std::move(violations));
}

SweepReport sweep(const SweepConfig& config, unsigned threads) {
  config.validate();
  const std::vector<std::size_t> schedule(config.steps, config.memory);
  IterateOptions options;
  options.threshold = config.threshold;

  std::vector<std::optional<SweepItem>> slots(config.count);
  const auto run_one = [&](std::size_t index) {
    const auto seed = config.item_seed(index);
    const auto result = iterate(random_pattern(config.pattern_length, config.value_set, seed), schedule, options);
    slots[index] =
        SweepItem{index, seed, result.bubble.flagged, result.bubble.peak_ratio, result.trajectory.terminal};
  };

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, config.count));
  if (threads <= 1) {
    for (std::size_t i = 0; i < config.count; ++i) run_one(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(threads);
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back([&, t] {
        try {
          for (std::size_t i = next++; i < config.count; i = next++) run_one(i);
        } catch (...) {
          errors[t] = std::current_exception();
        }
      });
    }
    for (auto& th : pool) th.join();
    for (const auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }

  SweepReport report;
  report.config = config;
  report.items.reserve(config.count);
  for (auto& slot : slots) {
    const auto& item = report.items.emplace_back(std::move(*slot));
    if (item.flagged) ++report.flagged_count;
    if (item.peak_ratio) {
      ++report.ratio_histogram[*item.peak_ratio];
    } else {
      ++report.undefined_ratio_count;
    }
  }
  report.frequency = Rational(static_cast<std::int64_t>(report.flagged_count), static_cast<std::int64_t>(config.count));
  return report;
}

}  // namespace mktmem
