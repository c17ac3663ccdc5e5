#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "mktmem/evolution.hpp"
#include "mktmem/pattern.hpp"
#include "mktmem/rational.hpp"

namespace mktmem {

/// Cyclic first-order sign autocorrelation: (1/p) * sum_i sign(X_i) sign(X_{i+1 mod p}).
/// This is the sign form, not the mean-centered Pearson estimate; for +-1 series the
/// two agree up to centering and the sign form makes the gain bound below exact.
[[nodiscard]] Rational autocorr1(const DeterministicPattern& pattern);

struct GainAutocorrComparison {
  Rational optimal_gain_memory1;
  Rational scaled_autocorr;  // p * |autocorr1|
  bool plus_minus_one = false;
  /// optimal_gain_memory1 >= scaled_autocorr; guaranteed when plus_minus_one.
  bool inequality_holds = false;
};

[[nodiscard]] GainAutocorrComparison compare_gain_autocorr(const DeterministicPattern& pattern);

/// Draws each return uniformly from value_set with SplitMix64(seed).uniform(|value_set|).
[[nodiscard]] DeterministicPattern random_pattern(std::size_t length, std::span<const Rational> value_set,
                                                  std::uint64_t seed);

struct SweepConfig {
  std::size_t count = 100;
  std::size_t pattern_length = 20;
  std::vector<Rational> value_set{-3, -2, -1, 1, 2, 3};
  std::size_t memory = 3;
  std::size_t steps = 16;
  Rational threshold = kDefaultBubbleThreshold;
  std::uint64_t seed = 1;

  void validate() const;
  /// Seed of the pattern at `index`: seed + index (mod 2^64).
  [[nodiscard]] std::uint64_t item_seed(std::size_t index) const noexcept { return seed + index; }
};

struct SweepItem {
  std::size_t index;
  std::uint64_t seed;
  bool flagged;
  std::optional<Rational> peak_ratio;
  Terminal terminal;
};

struct SweepReport {
  SweepConfig config;
  std::vector<SweepItem> items;  // in index order
  std::size_t flagged_count = 0;
  Rational frequency;                          // flagged / count
  std::map<Rational, std::size_t> ratio_histogram;  // exact peak ratio -> count
  std::size_t undefined_ratio_count = 0;            // all-zero initial patterns
};

/// One iterate() per seed with a constant schedule of config.steps entries.
/// Items are independent and run on `threads` workers (0 = hardware); the report
/// is assembled in index order, so it does not depend on scheduling.
[[nodiscard]] SweepReport sweep(const SweepConfig& config, unsigned threads = 0);

}  // namespace mktmem
