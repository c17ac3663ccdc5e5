#pragma once

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "mktmem/rational.hpp"

namespace mktmem {

/// One block of constant returns; the market is its endless repetition.
class DeterministicPattern {
 public:
  /// Throws ValidationError when values is empty.
  explicit DeterministicPattern(std::vector<Rational> values);
  DeterministicPattern(std::initializer_list<Rational> values);

  [[nodiscard]] std::size_t size() const noexcept { return values_.size(); }
  [[nodiscard]] std::span<const Rational> values() const noexcept { return values_; }
  /// 0-based access.
  [[nodiscard]] const Rational& operator[](std::size_t index) const { return values_[index]; }
  /// 1-based access matching the position convention used throughout.
  [[nodiscard]] const Rational& at_position(std::size_t position) const;

  [[nodiscard]] DeterministicPattern negated() const;
  [[nodiscard]] DeterministicPattern scaled(const Rational& factor) const;

  friend bool operator==(const DeterministicPattern&, const DeterministicPattern&) = default;
  friend auto operator<=>(const DeterministicPattern&, const DeterministicPattern&) = default;

 private:
  std::vector<Rational> values_;
};

struct Scenario {
  Rational probability;
  DeterministicPattern outcome;

  friend bool operator==(const Scenario&, const Scenario&) = default;
  friend auto operator<=>(const Scenario& lhs, const Scenario& rhs) {
    if (auto c = lhs.outcome <=> rhs.outcome; c != 0) return c;
    return lhs.probability <=> rhs.probability;
  }
};

/// Returns every problem found: probabilities outside (0,1], a sum other than 1,
/// unequal outcome lengths, an empty scenario list. Empty result means valid.
[[nodiscard]] std::vector<std::string> validate(std::span<const Scenario> scenarios);

/// A pattern block whose returns are random: a finite weighted set of equal-length
/// outcomes. Successive blocks of the market are independent draws.
///
/// Scenario order is preserved as given (it matters for expansion), but equality
/// and ordering use the canonical form: outcomes sorted, duplicates merged.
class ScenarioPattern {
 public:
  /// Throws ValidationError listing every violation.
  explicit ScenarioPattern(std::vector<Scenario> scenarios);
  /// A deterministic pattern is the single-scenario case with probability 1.
  ScenarioPattern(const DeterministicPattern& pattern);  // NOLINT(google-explicit-constructor)

  [[nodiscard]] std::size_t size() const noexcept { return scenarios_.front().outcome.size(); }
  [[nodiscard]] std::size_t scenario_count() const noexcept { return scenarios_.size(); }
  [[nodiscard]] std::span<const Scenario> scenarios() const noexcept { return scenarios_; }
  [[nodiscard]] const Scenario& scenario(std::size_t index) const { return scenarios_.at(index); }
  [[nodiscard]] std::span<const Scenario> canonical() const noexcept { return canonical_; }
  [[nodiscard]] bool is_deterministic() const noexcept { return canonical_.size() == 1; }

  [[nodiscard]] ScenarioPattern negated() const;

  friend bool operator==(const ScenarioPattern& lhs, const ScenarioPattern& rhs) {
    return lhs.canonical_ == rhs.canonical_;
  }
  friend auto operator<=>(const ScenarioPattern& lhs, const ScenarioPattern& rhs) {
    return lhs.canonical_ <=> rhs.canonical_;
  }

 private:
  std::vector<Scenario> scenarios_;
  std::vector<Scenario> canonical_;
};

using Pattern = std::variant<DeterministicPattern, ScenarioPattern>;

[[nodiscard]] std::size_t pattern_length(const Pattern& pattern);
[[nodiscard]] ScenarioPattern as_scenarios(const Pattern& pattern);
[[nodiscard]] Pattern negated(const Pattern& pattern);

/// Prices implied by a pattern's returns: prices[0] = start, prices[t] - prices[t-1] = values[t-1].
struct PricePath {
  Rational start;
  std::vector<Rational> prices;
};

[[nodiscard]] PricePath price_path(const DeterministicPattern& pattern, const Rational& start = Rational{});

}  // namespace mktmem
