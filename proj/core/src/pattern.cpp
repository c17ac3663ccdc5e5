#include "mktmem/pattern.hpp"

#include <algorithm>
#include <string>

#include "mktmem/errors.hpp"

namespace mktmem {

DeterministicPattern::DeterministicPattern(std::vector<Rational> values) : values_(std::move(values)) {
  if (values_.empty()) throw ValidationError("pattern must contain at least one return");
}

DeterministicPattern::DeterministicPattern(std::initializer_list<Rational> values)
    : DeterministicPattern(std::vector<Rational>(values)) {}

const Rational& DeterministicPattern::at_position(std::size_t position) const {
  if (position < 1 || position > values_.size()) {
    throw ValidationError("position " + std::to_string(position) + " outside 1.." + std::to_string(values_.size()));
  }
  return values_[position - 1];
}

DeterministicPattern DeterministicPattern::negated() const {
  std::vector<Rational> out;
  out.reserve(values_.size());
  for (const auto& v : values_) out.push_back(-v);
  return DeterministicPattern(std::move(out));
}

DeterministicPattern DeterministicPattern::scaled(const Rational& factor) const {
  std::vector<Rational> out;
  out.reserve(values_.size());
  for (const auto& v : values_) out.push_back(v * factor);
  return DeterministicPattern(std::move(out));
}

std::vector<std::string> validate(std::span<const Scenario> scenarios) {
  std::vector<std::string> violations;
  if (scenarios.empty()) {
    violations.emplace_back("no scenarios");
    return violations;
  }
  Rational total;
  const std::size_t length = scenarios.front().outcome.size();
  bool unequal = false;
  for (std::size_t i = 0; i < scenarios.size(); ++i) {
    const auto& p = scenarios[i].probability;
    if (sign(p) <= 0 || p > Rational(1)) {
      violations.push_back("scenarios[" + std::to_string(i) + "]: probability " + p.str() + " outside (0,1]");
    }
    total += p;
    if (scenarios[i].outcome.size() != length) unequal = true;
  }
  if (total != Rational(1)) violations.push_back("probability sum " + total.str() + " != 1");
  if (unequal) violations.emplace_back("unequal lengths");
  return violations;
}

ScenarioPattern::ScenarioPattern(std::vector<Scenario> scenarios) : scenarios_(std::move(scenarios)) {
  if (auto violations = validate(scenarios_); !violations.empty()) {
    throw ValidationError("invalid scenario pattern", std::move(violations));
  }
  canonical_ = scenarios_;
  std::sort(canonical_.begin(), canonical_.end());
  std::vector<Scenario> merged;
  for (auto& s : canonical_) {
    if (!merged.empty() && merged.back().outcome == s.outcome) {
      merged.back().probability += s.probability;
    } else {
      merged.push_back(std::move(s));
    }
  }
  canonical_ = std::move(merged);
}

ScenarioPattern::ScenarioPattern(const DeterministicPattern& pattern)
    : ScenarioPattern(std::vector<Scenario>{Scenario{Rational(1), pattern}}) {}

ScenarioPattern ScenarioPattern::negated() const {
  std::vector<Scenario> out;
  out.reserve(scenarios_.size());
  for (const auto& s : scenarios_) out.push_back({s.probability, s.outcome.negated()});
  return ScenarioPattern(std::move(out));
}

std::size_t pattern_length(const Pattern& pattern) {
  return std::visit([](const auto& p) { return p.size(); }, pattern);
}

ScenarioPattern as_scenarios(const Pattern& pattern) {
  return std::visit([](const auto& p) { return ScenarioPattern(p); }, pattern);
}

Pattern negated(const Pattern& pattern) {
  return std::visit([](const auto& p) -> Pattern { return p.negated(); }, pattern);
}

PricePath price_path(const DeterministicPattern& pattern, const Rational& start) {
  PricePath path{start, {}};
  path.prices.reserve(pattern.size() + 1);
  path.prices.push_back(start);
  for (const auto& v : pattern.values()) path.prices.push_back(path.prices.back() + v);
  return path;
}

}  // namespace mktmem
