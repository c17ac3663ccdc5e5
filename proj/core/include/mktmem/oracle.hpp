#pragma once

#include <cstddef>
#include <cstdint>

#include "mktmem/pattern.hpp"
#include "mktmem/rational.hpp"

namespace mktmem {

struct BruteForceOptions {
  /// Refuse (CapExceeded) when 3^k exceeds this, k = number of observed contexts.
  std::uint64_t max_tables = 43046721;  // 3^16
  /// 0 picks std::thread::hardware_concurrency().
  unsigned threads = 0;
};

/// Exhaustive search over every action table on the observed contexts, each
/// scored by the expectation in the gain definition. Shares no code with the
/// context-weight solver (windows are materialized independently) and exists
/// to cross-check it.
[[nodiscard]] Rational brute_force_optimal_gain(const ScenarioPattern& pattern, std::size_t memory,
                                                const BruteForceOptions& options = {});

}  // namespace mktmem
