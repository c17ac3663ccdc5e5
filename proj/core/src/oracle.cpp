#include "mktmem/oracle.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <numeric>
#include <string>
#include <thread>
#include <vector>

#include "mktmem/errors.hpp"

namespace mktmem {
namespace {

struct Term {
  std::size_t context;
  std::int64_t signed_mass;  // sign(target) * probability * denominator
};

struct RawTerm {
  std::size_t context;
  int target_sign;
  Rational probability;
};

// Realizes the market as [oldest previous block ... previous block, current block]
// and reads the window straight off the concatenation.
std::vector<RawTerm> materialize(const ScenarioPattern& pattern, std::size_t memory,
                                 std::map<std::vector<Rational>, std::size_t>& ids) {
  const auto scenarios = pattern.scenarios();
  const std::size_t p = pattern.size();
  const std::size_t s = scenarios.size();
  std::map<std::pair<std::size_t, int>, Rational> grouped;

  for (std::size_t i = 1; i <= p; ++i) {
    std::size_t back = 0;
    while (i - 1 + back * p < memory) ++back;
    std::vector<std::size_t> draw(back + 1, 0);  // draw[0] oldest, draw[back] current
    std::vector<Rational> sequence;
    sequence.reserve((back + 1) * p);
    while (true) {
      sequence.clear();
      Rational prob(1);
      for (const auto idx : draw) {
        const auto values = scenarios[idx].outcome.values();
        sequence.insert(sequence.end(), values.begin(), values.end());
        prob *= scenarios[idx].probability;
      }
      const std::size_t target_index = back * p + (i - 1);
      std::vector<Rational> window(sequence.begin() + static_cast<std::ptrdiff_t>(target_index - memory),
                                   sequence.begin() + static_cast<std::ptrdiff_t>(target_index));
      const auto [it, inserted] = ids.try_emplace(std::move(window), ids.size());
      const int t = sign(sequence[target_index]);
      // Equal summands of the expectation are grouped; zero targets never score.
      if (t != 0) grouped[{it->second, t}] += prob;

      std::size_t digit = draw.size();
      while (digit > 0 && ++draw[digit - 1] == s) draw[--digit] = 0;
      if (digit == 0) break;
    }
  }

  std::vector<RawTerm> terms;
  terms.reserve(grouped.size());
  for (const auto& [key, prob] : grouped) terms.push_back({key.first, key.second, prob});
  return terms;
}

std::int64_t best_in_range(const std::vector<Term>& terms, std::size_t k, std::uint64_t begin, std::uint64_t end) {
  // actions[c] in {-1,0,1}, decoded from the base-3 table index.
  std::vector<int> actions(k, -1);
  std::uint64_t rest = begin;
  for (std::size_t c = 0; c < k; ++c) {
    actions[c] = static_cast<int>(rest % 3) - 1;
    rest /= 3;
  }
  std::int64_t best = std::numeric_limits<std::int64_t>::min();
  for (std::uint64_t table = begin; table < end; ++table) {
    std::int64_t value = 0;
    for (const auto& term : terms) value += actions[term.context] * term.signed_mass;
    best = std::max(best, value);
    for (std::size_t c = 0; c < k; ++c) {
      if (++actions[c] <= 1) break;
      actions[c] = -1;
    }
  }
  return best;
}

}  // namespace

Rational brute_force_optimal_gain(const ScenarioPattern& pattern, std::size_t memory,
                                  const BruteForceOptions& options) {
  if (memory < 1) throw ValidationError("memory must be >= 1");
  std::map<std::vector<Rational>, std::size_t> ids;
  const auto raw = materialize(pattern, memory, ids);
  const std::size_t k = ids.size();

  std::uint64_t tables = 1;
  for (std::size_t c = 0; c < k; ++c) {
    if (tables > options.max_tables / 3) {
      throw CapExceeded("brute force over " + std::to_string(k) + " contexts exceeds " +
                        std::to_string(options.max_tables) + " tables");
    }
    tables *= 3;
  }

  std::int64_t denominator = 1;
  for (const auto& term : raw) {
    const std::int64_t d = term.probability.den();
    const std::int64_t g = std::gcd(denominator, d);
    if (denominator / g > std::numeric_limits<std::int64_t>::max() / d) {
      throw CapExceeded("common probability denominator too large for brute force");
    }
    denominator = denominator / g * d;
  }
  std::vector<Term> terms;
  terms.reserve(raw.size());
  for (const auto& term : raw) {
    const Rational scaled = term.probability * Rational(denominator);
    terms.push_back({term.context, term.target_sign * scaled.num()});
  }

  unsigned threads = options.threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : options.threads;
  if (tables < (std::uint64_t{1} << 16)) threads = 1;
  threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, tables));

  std::vector<std::int64_t> best(threads, std::numeric_limits<std::int64_t>::min());
  const std::uint64_t chunk = (tables + threads - 1) / threads;
  if (threads == 1) {
    best[0] = best_in_range(terms, k, 0, tables);
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) {
      const std::uint64_t begin = t * chunk;
      const std::uint64_t end = std::min(tables, begin + chunk);
      if (begin >= end) continue;
      pool.emplace_back([&, t, begin, end] { best[t] = best_in_range(terms, k, begin, end); });
    }
    for (auto& th : pool) th.join();
  }
  return Rational(*std::max_element(best.begin(), best.end())) / Rational(denominator);
}

}  // namespace mktmem
