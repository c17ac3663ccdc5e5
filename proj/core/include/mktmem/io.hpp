#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "mktmem/analytics.hpp"
#include "mktmem/constructions.hpp"
#include "mktmem/evolution.hpp"
#include "mktmem/pattern.hpp"
#include "mktmem/strategy.hpp"

namespace mktmem::io {

// Pattern documents. Rationals are always strings ("-2", "1/8").
//   {"kind":"deterministic","values":["-2","2",...]}
//   {"kind":"scenario","scenarios":[{"prob":"1/2","values":["1"]}, ...]}

/// Throws ParseError naming the offending location ("scenarios[1].values[0]: ...").
[[nodiscard]] Pattern parse_pattern(std::string_view text);
[[nodiscard]] Pattern pattern_from_json(const nlohmann::json& doc);
[[nodiscard]] std::string serialize_pattern(const Pattern& pattern);
[[nodiscard]] nlohmann::json to_json(const Pattern& pattern);

// Strategy documents: {"memory":m,"entries":[{"context":["-1","1"],"action":-1}, ...]}
[[nodiscard]] TabulatedStrategy parse_strategy(std::string_view text);
[[nodiscard]] nlohmann::json to_json(const TabulatedStrategy& strategy);

[[nodiscard]] nlohmann::json to_json(const Rational& r);
[[nodiscard]] nlohmann::json to_json(const Context& context);
[[nodiscard]] nlohmann::json to_json(const ContextWeights& weights);
[[nodiscard]] nlohmann::json to_json(const GainReport& report);
[[nodiscard]] nlohmann::json to_json(const Terminal& terminal);
[[nodiscard]] nlohmann::json to_json(const BubbleReport& report);
[[nodiscard]] nlohmann::json to_json(const IterationResult& result);
[[nodiscard]] nlohmann::json to_json(const FeedoffReport& report);
[[nodiscard]] nlohmann::json to_json(const SweepReport& report);
[[nodiscard]] nlohmann::json to_json(const GainAutocorrComparison& comparison);

/// Header "step,position,value"; one row per state and position. Step 0 is the
/// initial pattern. An empty trajectory yields the header only. Deterministic
/// patterns only (ValidationError otherwise).
[[nodiscard]] std::string emit_trajectory_csv(const EvolutionTrajectory& trajectory);

/// Header "seed,flagged,peak_ratio,terminal"; one row per item, then '#'-prefixed
/// aggregate lines (count, flagged, frequency, one histogram line per ratio).
[[nodiscard]] std::string emit_sweep_csv(const SweepReport& report);

struct Series {
  std::string name;
  std::vector<Rational> values;
};

/// Minimal line chart: axes, tick labels at the extremes, one polyline per series.
[[nodiscard]] std::string emit_price_svg(const std::vector<Series>& series, const std::string& title);

enum class IngestMode { kPrices, kReturns };

struct IngestSpec {
  std::string source;  // path
  std::string column;  // header name, or 0-based index
  IngestMode mode = IngestMode::kPrices;
  std::optional<Rational> quantum;
};

struct IngestResult {
  DeterministicPattern pattern;
  std::vector<std::string> provenance;
};

/// Reads a numeric column exactly (decimals become exact rationals). Prices mode
/// takes first differences. If quantum is set each return is rounded to the
/// nearest multiple of it, ties away from zero. The first row is treated as a
/// header when its selected cell is not numeric.
[[nodiscard]] IngestResult ingest(const IngestSpec& spec);
[[nodiscard]] IngestResult ingest_csv(std::string_view csv_text, const IngestSpec& spec);

}  // namespace mktmem::io
