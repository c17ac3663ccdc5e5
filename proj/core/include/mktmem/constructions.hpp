#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "mktmem/pattern.hpp"
#include "mktmem/rational.hpp"

namespace mktmem {

/// Upper bound on scenario count times pattern length for generated patterns.
inline constexpr std::uint64_t kDefaultScenarioCap = std::uint64_t{1} << 20;

/// [X_1, ..., X_{m+1}, X_1 * ... * X_{m+1}] over fair independent +-1 variables.
/// Scenarios are listed with X_1 varying slowest and +1 before -1.
/// Efficient for memory m, exploitable with gain 1 at memory m+1.
[[nodiscard]] ScenarioPattern parity_pattern(std::size_t memory, std::uint64_t cap = kDefaultScenarioCap);

/// The fair coin [X_1]: efficient for every memory.
[[nodiscard]] ScenarioPattern fair_coin_pattern();

struct FeedoffParams {
  std::size_t m = 2;
  std::size_t m_prime = 3;
  Rational a{10};
  Rational a_prime{20};
  Rational b{30};
  Rational c{40};

  /// 1 <= m < m'; a, a', b, c all > 1 and pairwise distinct in absolute value.
  void validate() const;
};

/// Two half-blocks over independent fair +-1 variables X_1..X_{m'}, Y_2..Y_{m'}:
///
///   X_1..X_{m-1}, a X_m, b prod(X_1..X_m), Y_2..Y_{m'-1}, c Y_{m'}, prod(X_1..X_m) prod(Y),
///   X_1..X_{m'-1}, a' X_{m'}, b prod(X_1..X_{m'}), Y_2..Y_{m'-1}, c Y_{m'}, -prod(X_1..X_{m'}) prod(Y)
///
/// A memory-m agent can only exploit the first b entry; doing so breaks the
/// symmetry that hides the c entries from a memory-m' agent.
[[nodiscard]] ScenarioPattern feedoff_pattern(const FeedoffParams& params, std::uint64_t cap = kDefaultScenarioCap);

/// 1-based positions of the two b entries.
[[nodiscard]] std::pair<std::size_t, std::size_t> feedoff_b_positions(const FeedoffParams& params);

struct FeedoffReport {
  FeedoffParams params;
  Rational sm_on_p;               // optimal memory-m strategy on P
  Rational smprime_on_p;          // optimal memory-m' strategy on P
  Rational optimal_mprime_on_pm;  // after the memory-m agent acted
  Rational optimal_m_on_pm;
  Rational optimal_mprime_on_pmprime;
  bool inequality_holds = false;  // optimal_mprime_on_pm beats the other three comparisons
  ScenarioPattern p;
  ScenarioPattern p_m;
  ScenarioPattern p_mprime;
};

/// Evolves P by the tie-to-zero optimal strategies of both memories and scores
/// the five gains. BoundaryDependent here indicates a broken construction.
[[nodiscard]] FeedoffReport feedoff_report(const FeedoffParams& params);

struct IdentityOrder {};
struct ShuffleSeed {
  std::uint64_t seed;
};
/// Either a permutation of scenario indices, the identity, or a seeded shuffle
/// of the replicated blocks.
using ExpansionOrder = std::variant<IdentityOrder, std::vector<std::size_t>, ShuffleSeed>;

/// Concatenates scenario outcomes, each repeated probability * D times where D
/// is the common denominator, into one long deterministic block.
[[nodiscard]] DeterministicPattern expand_to_deterministic(const ScenarioPattern& pattern,
                                                           const ExpansionOrder& order = IdentityOrder{},
                                                           std::uint64_t cap = kDefaultScenarioCap);

struct CatalogEntry {
  DeterministicPattern pattern;
  std::string description;
  std::vector<std::string> notes;
};

/// "fig1": [-1,1,-1,1,-1,1,2]; "fig2": [-2,2,-2,2,-2,2,3].
[[nodiscard]] const std::map<std::string, CatalogEntry>& figure_patterns();
/// Throws LookupError for unknown names.
[[nodiscard]] const CatalogEntry& figure_pattern(const std::string& name);

}  // namespace mktmem
