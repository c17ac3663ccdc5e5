#include "mktmem/constructions.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "mktmem/errors.hpp"
#include "mktmem/evolution.hpp"
#include "mktmem/random.hpp"
#include "mktmem/strategy.hpp"

namespace mktmem {
namespace {

void check_cap(std::size_t variables, std::size_t length, std::uint64_t cap) {
  if (variables >= 63 || (std::uint64_t{1} << variables) > cap / length) {
    throw CapExceeded(std::to_string(variables) + " fair variables over length " + std::to_string(length) +
                      " exceed the scenario cap " + std::to_string(cap));
  }
}

// Assignment `index` of n fair +-1 variables; variable 0 varies slowest, +1 first.
std::vector<int> assignment(std::uint64_t index, std::size_t n) {
  std::vector<int> out(n);
  for (std::size_t j = 0; j < n; ++j) out[j] = ((index >> (n - 1 - j)) & 1U) != 0 ? -1 : 1;
  return out;
}

}  // namespace

ScenarioPattern parity_pattern(std::size_t memory, std::uint64_t cap) {
  if (memory < 1) throw ValidationError("memory must be >= 1");
  const std::size_t n = memory + 1;
  check_cap(n, n + 1, cap);
  const std::uint64_t count = std::uint64_t{1} << n;
  std::vector<Scenario> scenarios;
  scenarios.reserve(count);
  for (std::uint64_t idx = 0; idx < count; ++idx) {
    const auto x = assignment(idx, n);
    std::vector<Rational> values(x.begin(), x.end());
    values.emplace_back(std::accumulate(x.begin(), x.end(), 1, std::multiplies<>()));
    scenarios.push_back({Rational(1, static_cast<std::int64_t>(count)), DeterministicPattern(std::move(values))});
  }
  return ScenarioPattern(std::move(scenarios));
}

ScenarioPattern fair_coin_pattern() {
  return ScenarioPattern({{Rational(1, 2), DeterministicPattern{1}}, {Rational(1, 2), DeterministicPattern{-1}}});
}

void FeedoffParams::validate() const {
  std::vector<std::string> violations;
  if (m < 1) violations.emplace_back("m must be >= 1");
  if (m >= m_prime) violations.emplace_back("m must be < m'");
  const Rational constants[] = {a, a_prime, b, c};
  const char* names[] = {"a", "a'", "b", "c"};
  for (std::size_t i = 0; i < 4; ++i) {
    if (constants[i] <= Rational(1)) violations.push_back(std::string(names[i]) + " must be > 1");
    for (std::size_t j = i + 1; j < 4; ++j) {
      if (abs(constants[i]) == abs(constants[j])) {
        violations.push_back(std::string(names[i]) + " and " + names[j] + " must differ in absolute value");
      }
    }
  }
  if (!violations.empty()) throw ValidationError("invalid feed-off parameters", std::move(violations));
}

std::pair<std::size_t, std::size_t> feedoff_b_positions(const FeedoffParams& params) {
  return {params.m + 1, (params.m + params.m_prime + 1) + params.m_prime + 1};
}

ScenarioPattern feedoff_pattern(const FeedoffParams& params, std::uint64_t cap) {
  params.validate();
  const std::size_t m = params.m;
  const std::size_t mp = params.m_prime;
  const std::size_t length = (m + mp + 1) + (2 * mp + 1);
  const std::size_t n = 2 * mp - 1;  // X_1..X_{m'} then Y_2..Y_{m'}
  check_cap(n, length, cap);
  const std::uint64_t count = std::uint64_t{1} << n;

  std::vector<Scenario> scenarios;
  scenarios.reserve(count);
  for (std::uint64_t idx = 0; idx < count; ++idx) {
    const auto v = assignment(idx, n);
    const auto x = [&](std::size_t j) { return v[j - 1]; };
    const auto y = [&](std::size_t j) { return v[mp + j - 2]; };
    const auto prod_x = [&](std::size_t upto) {
      int r = 1;
      for (std::size_t j = 1; j <= upto; ++j) r *= x(j);
      return r;
    };
    int prod_y = 1;
    for (std::size_t j = 2; j <= mp; ++j) prod_y *= y(j);

    std::vector<Rational> values;
    values.reserve(length);
    for (std::size_t j = 1; j < m; ++j) values.emplace_back(x(j));
    values.push_back(params.a * Rational(x(m)));
    values.push_back(params.b * Rational(prod_x(m)));
    for (std::size_t j = 2; j < mp; ++j) values.emplace_back(y(j));
    values.push_back(params.c * Rational(y(mp)));
    values.emplace_back(prod_x(m) * prod_y);

    for (std::size_t j = 1; j < mp; ++j) values.emplace_back(x(j));
    values.push_back(params.a_prime * Rational(x(mp)));
    values.push_back(params.b * Rational(prod_x(mp)));
    for (std::size_t j = 2; j < mp; ++j) values.emplace_back(y(j));
    values.push_back(params.c * Rational(y(mp)));
    values.emplace_back(-prod_x(mp) * prod_y);

    scenarios.push_back({Rational(1, static_cast<std::int64_t>(count)), DeterministicPattern(std::move(values))});
  }
  return ScenarioPattern(std::move(scenarios));
}

FeedoffReport feedoff_report(const FeedoffParams& params) {
  ScenarioPattern p = feedoff_pattern(params);
  const auto s_m = optimal_strategy(p, params.m);
  const auto s_mprime = optimal_strategy(p, params.m_prime);
  ScenarioPattern p_m = evolve_scenario(p, s_m);
  ScenarioPattern p_mprime = evolve_scenario(p, s_mprime);

  FeedoffReport report{params,
                       gain(s_m, p).gain,
                       gain(s_mprime, p).gain,
                       optimal_gain(p_m, params.m_prime),
                       optimal_gain(p_m, params.m),
                       optimal_gain(p_mprime, params.m_prime),
                       false,
                       std::move(p),
                       std::move(p_m),
                       std::move(p_mprime)};
  report.inequality_holds = report.optimal_mprime_on_pm > report.smprime_on_p &&
                            report.optimal_mprime_on_pm > report.optimal_m_on_pm &&
                            report.optimal_mprime_on_pm > report.optimal_mprime_on_pmprime;
  return report;
}

DeterministicPattern expand_to_deterministic(const ScenarioPattern& pattern, const ExpansionOrder& order,
                                             std::uint64_t cap) {
  const auto scenarios = pattern.scenarios();
  std::int64_t denominator = 1;
  for (const auto& s : scenarios) {
    denominator = std::lcm(denominator, s.probability.den());
    if (denominator <= 0 || static_cast<std::uint64_t>(denominator) > cap) {
      throw CapExceeded("common probability denominator exceeds the expansion cap");
    }
  }

  std::vector<std::size_t> scenario_order(scenarios.size());
  std::iota(scenario_order.begin(), scenario_order.end(), std::size_t{0});
  if (const auto* perm = std::get_if<std::vector<std::size_t>>(&order)) {
    auto sorted = *perm;
    std::sort(sorted.begin(), sorted.end());
    if (sorted != scenario_order) throw ValidationError("expansion order is not a permutation of scenario indices");
    scenario_order = *perm;
  }

  std::vector<std::size_t> blocks;
  for (const auto idx : scenario_order) {
    const auto replicas = (scenarios[idx].probability * Rational(denominator)).num();
    if (blocks.size() + static_cast<std::uint64_t>(replicas) > cap / pattern.size()) {
      throw CapExceeded("expanded pattern exceeds the cap of " + std::to_string(cap) + " returns");
    }
    blocks.insert(blocks.end(), static_cast<std::size_t>(replicas), idx);
  }
  if (const auto* shuffle = std::get_if<ShuffleSeed>(&order)) {
    SplitMix64 rng(shuffle->seed);
    for (std::size_t i = blocks.size(); i > 1; --i) {
      std::swap(blocks[i - 1], blocks[rng.uniform(i)]);
    }
  }

  std::vector<Rational> values;
  values.reserve(blocks.size() * pattern.size());
  for (const auto idx : blocks) {
    const auto outcome = scenarios[idx].outcome.values();
    values.insert(values.end(), outcome.begin(), outcome.end());
  }
  return DeterministicPattern(std::move(values));
}

const std::map<std::string, CatalogEntry>& figure_patterns() {
  static const std::map<std::string, CatalogEntry> catalog{
      {"fig1",
       {DeterministicPattern{-1, 1, -1, 1, -1, 1, 2},
        "alternating market with a final up-move; a memory-2 agent seeing (-1,1) forecasts down",
        {}}},
      {"fig2",
       {DeterministicPattern{-2, 2, -2, 2, -2, 2, 3},
        "memory-2 evolution forms a bubble; memory-3 evolution does not",
        {"one memory-2 step gives [-1,1,-1,1,-1,1,4]: at context (-2,2) the optimal action is -1, which "
         "pulls the three -2 returns toward zero and pushes the final 3 up to 4 (3 - (-1)). "
         "The intermediate [-1,1,-1,1,-1,1,3] sometimes quoted for this step is not what the evolution rule "
         "produces, and only the [..,4] variant leads to [0,0,0,0,0,0,5] on the next step."}}},
  };
  return catalog;
}

const CatalogEntry& figure_pattern(const std::string& name) {
  const auto& catalog = figure_patterns();
  const auto it = catalog.find(name);
  if (it == catalog.end()) throw LookupError("unknown catalog pattern '" + name + "'");
  return it->second;
}

}  // namespace mktmem
