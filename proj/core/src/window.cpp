#include "mktmem/window.hpp"

#include <string>

#include "mktmem/errors.hpp"

namespace mktmem {
namespace {

void require_memory(std::size_t memory) {
  if (memory < 1) throw ValidationError("memory must be >= 1");
}

}  // namespace

Context Context::negated() const {
  Context out;
  out.values.reserve(values.size());
  for (const auto& v : values) out.values.push_back(-v);
  return out;
}

Context Context::scaled(const Rational& factor) const {
  Context out;
  out.values.reserve(values.size());
  for (const auto& v : values) out.values.push_back(v * factor);
  return out;
}

std::string to_string(const Context& context) {
  std::string out = "(";
  for (std::size_t i = 0; i < context.values.size(); ++i) {
    if (i > 0) out += ",";
    out += context.values[i].str();
  }
  return out + ")";
}

Context cyclic_window(const DeterministicPattern& pattern, std::size_t position, std::size_t memory) {
  require_memory(memory);
  const std::size_t p = pattern.size();
  if (position < 1 || position > p) {
    throw ValidationError("position " + std::to_string(position) + " outside 1.." + std::to_string(p));
  }
  Context ctx;
  ctx.values.reserve(memory);
  // Offset of the oldest entry, shifted by a multiple of p to stay non-negative.
  const std::size_t shift = ((memory / p) + 1) * p;
  for (std::size_t k = 0; k < memory; ++k) {
    const std::size_t zero_based = (position - 1 + shift - memory + k) % p;
    ctx.values.push_back(pattern[zero_based]);
  }
  return ctx;
}

std::size_t blocks_spanned(std::size_t position, std::size_t memory, std::size_t length) noexcept {
  const std::size_t inside = position - 1;
  if (inside >= memory) return 0;
  return (memory - inside + length - 1) / length;
}

void for_each_window(const ScenarioPattern& pattern, std::size_t memory,
                     const std::function<void(const WindowSample&)>& visit, std::uint64_t sample_cap) {
  require_memory(memory);
  const auto scenarios = pattern.scenarios();
  const std::size_t p = pattern.size();
  const std::size_t s = scenarios.size();

  std::uint64_t total = 0;
  for (std::size_t i = 1; i <= p; ++i) {
    std::uint64_t count = s;
    for (std::size_t b = 0; b < blocks_spanned(i, memory, p); ++b) {
      count *= s;
      if (count > sample_cap) break;
    }
    total += count;
    if (total > sample_cap) {
      throw CapExceeded("window enumeration exceeds " + std::to_string(sample_cap) + " samples");
    }
  }

  WindowSample sample;
  sample.context.values.resize(memory);
  std::vector<std::size_t> previous;
  for (std::size_t i = 1; i <= p; ++i) {
    const std::size_t nb = blocks_spanned(i, memory, p);
    sample.position = i;
    for (std::size_t cur = 0; cur < s; ++cur) {
      const auto& current = scenarios[cur];
      sample.scenario = cur;
      sample.target = current.outcome[i - 1];
      // previous[0] is the block immediately before the current one.
      previous.assign(nb, 0);
      while (true) {
        Rational prob = current.probability;
        for (const auto idx : previous) prob *= scenarios[idx].probability;
        sample.probability = prob;
        for (std::size_t k = 0; k < memory; ++k) {
          // Signed index of the window entry relative to the current block (1-based).
          const auto index = static_cast<std::int64_t>(i) - static_cast<std::int64_t>(memory) +
                             static_cast<std::int64_t>(k);
          if (index >= 1) {
            sample.context.values[k] = current.outcome[static_cast<std::size_t>(index - 1)];
          } else {
            const auto len = static_cast<std::int64_t>(p);
            const auto back = (len - index) / len;
            const auto within = index + back * len;
            const auto& block = scenarios[previous[static_cast<std::size_t>(back - 1)]];
            sample.context.values[k] = block.outcome[static_cast<std::size_t>(within - 1)];
          }
        }
        visit(sample);

        std::size_t digit = 0;
        while (digit < nb && ++previous[digit] == s) previous[digit++] = 0;
        if (digit == nb) break;
      }
    }
  }
}

std::vector<WindowSample> block_pair_enumeration(const ScenarioPattern& pattern, std::size_t memory) {
  std::vector<WindowSample> out;
  for_each_window(pattern, memory, [&](const WindowSample& sample) { out.push_back(sample); });
  return out;
}

}  // namespace mktmem
