#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include "mktmem/pattern.hpp"
#include "mktmem/rational.hpp"

namespace mktmem {

/// The returns a memory-m strategy sees before acting, oldest first.
/// Exact value equality makes it usable as a lookup key.
struct Context {
  std::vector<Rational> values;

  [[nodiscard]] std::size_t size() const noexcept { return values.size(); }
  [[nodiscard]] const Rational& latest() const { return values.back(); }
  [[nodiscard]] Context negated() const;
  [[nodiscard]] Context scaled(const Rational& factor) const;

  friend bool operator==(const Context&, const Context&) = default;
  friend auto operator<=>(const Context&, const Context&) = default;
};

[[nodiscard]] std::string to_string(const Context& context);

/// The m returns preceding 1-based position i in the periodic extension of the
/// pattern. Wraps as many times as needed when m >= p.
[[nodiscard]] Context cyclic_window(const DeterministicPattern& pattern, std::size_t position, std::size_t memory);

/// One realized (context, next return) pair together with its probability.
struct WindowSample {
  std::size_t position;  // 1-based
  std::size_t scenario;  // index of the current block's scenario
  Context context;
  Rational target;
  Rational probability;
};

/// Number of previous independent blocks the window at `position` reaches into.
[[nodiscard]] std::size_t blocks_spanned(std::size_t position, std::size_t memory, std::size_t length) noexcept;

/// Upper bound on emitted samples before enumeration refuses with CapExceeded.
inline constexpr std::uint64_t kDefaultSampleCap = std::uint64_t{1} << 24;

/// Visits every realized window of a scenario pattern.
///
/// For each position i and current scenario, the window is completed from as
/// many previous blocks as it spans; each previous block is an independent
/// draw, so the probability is the product over all blocks involved. Positions
/// whose window stays inside the current block only enumerate the current
/// scenario. For every position the emitted probabilities sum to 1.
void for_each_window(const ScenarioPattern& pattern, std::size_t memory,
                     const std::function<void(const WindowSample&)>& visit,
                     std::uint64_t sample_cap = kDefaultSampleCap);

[[nodiscard]] std::vector<WindowSample> block_pair_enumeration(const ScenarioPattern& pattern, std::size_t memory);

}  // namespace mktmem
