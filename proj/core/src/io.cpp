#include "mktmem/io.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "mktmem/errors.hpp"

namespace mktmem::io {
namespace {

using nlohmann::json;

Rational rational_at(const json& node, const std::string& where) {
  if (!node.is_string()) throw ParseError(where + ": expected a rational string such as \"-2\" or \"1/8\"");
  try {
    return Rational::parse(node.get<std::string>());
  } catch (const std::exception& e) {
    throw ParseError(where + ": " + e.what());
  }
}

const json& member(const json& node, const char* key, const std::string& where) {
  if (!node.is_object() || !node.contains(key)) throw ParseError(where + ": missing \"" + key + "\"");
  return node.at(key);
}

std::vector<Rational> values_at(const json& node, const std::string& where) {
  if (!node.is_array()) throw ParseError(where + ": expected an array");
  if (node.empty()) throw ParseError(where + ": pattern must contain at least one return");
  std::vector<Rational> out;
  out.reserve(node.size());
  for (std::size_t i = 0; i < node.size(); ++i) out.push_back(rational_at(node[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

json parse_json(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError("malformed JSON at byte " + std::to_string(e.byte) + ": " + e.what());
  }
}

json values_json(std::span<const Rational> values) {
  json arr = json::array();
  for (const auto& v : values) arr.push_back(v.str());
  return arr;
}

std::string ratio_text(const std::optional<Rational>& ratio) { return ratio ? ratio->str() : "undefined"; }

}  // namespace

Pattern pattern_from_json(const json& doc) {
  const auto& kind = member(doc, "kind", "document");
  if (!kind.is_string()) throw ParseError("kind: expected \"deterministic\" or \"scenario\"");
  if (kind == "deterministic") return DeterministicPattern(values_at(member(doc, "values", "document"), "values"));
  if (kind != "scenario") throw ParseError("kind: unknown pattern kind " + kind.dump());

  const auto& list = member(doc, "scenarios", "document");
  if (!list.is_array() || list.empty()) throw ParseError("scenarios: expected a non-empty array");
  std::vector<Scenario> scenarios;
  scenarios.reserve(list.size());
  for (std::size_t i = 0; i < list.size(); ++i) {
    const std::string where = "scenarios[" + std::to_string(i) + "]";
    scenarios.push_back({rational_at(member(list[i], "prob", where), where + ".prob"),
                         DeterministicPattern(values_at(member(list[i], "values", where), where + ".values"))});
  }
  if (auto violations = validate(scenarios); !violations.empty()) {
    throw ParseError("invalid scenario pattern", std::move(violations));
  }
  return ScenarioPattern(std::move(scenarios));
}

Pattern parse_pattern(std::string_view text) { return pattern_from_json(parse_json(text)); }

json to_json(const Pattern& pattern) {
  if (const auto* det = std::get_if<DeterministicPattern>(&pattern)) {
    return json{{"kind", "deterministic"}, {"values", values_json(det->values())}};
  }
  json list = json::array();
  for (const auto& s : std::get<ScenarioPattern>(pattern).scenarios()) {
    list.push_back(json{{"prob", s.probability.str()}, {"values", values_json(s.outcome.values())}});
  }
  return json{{"kind", "scenario"}, {"scenarios", std::move(list)}};
}

std::string serialize_pattern(const Pattern& pattern) { return to_json(pattern).dump(2) + "\n"; }

TabulatedStrategy parse_strategy(std::string_view text) {
  const json doc = parse_json(text);
  const auto& memory = member(doc, "memory", "document");
  if (!memory.is_number_integer() || memory.get<std::int64_t>() < 1) throw ParseError("memory: expected an integer >= 1");
  TabulatedStrategy strategy(memory.get<std::size_t>());
  const auto& entries = member(doc, "entries", "document");
  if (!entries.is_array()) throw ParseError("entries: expected an array");
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const std::string where = "entries[" + std::to_string(i) + "]";
    const auto& ctx_node = member(entries[i], "context", where);
    if (!ctx_node.is_array()) throw ParseError(where + ".context: expected an array");
    Context ctx;
    for (std::size_t k = 0; k < ctx_node.size(); ++k) {
      ctx.values.push_back(rational_at(ctx_node[k], where + ".context[" + std::to_string(k) + "]"));
    }
    const auto& action = member(entries[i], "action", where);
    if (!action.is_number_integer()) throw ParseError(where + ".action: expected -1, 0 or 1");
    try {
      strategy.set(ctx, action_from_int(action.get<int>()));
    } catch (const ValidationError& e) {
      throw ParseError(where + ": " + e.what());
    }
  }
  return strategy;
}

json to_json(const Rational& r) { return r.str(); }

json to_json(const Context& context) { return values_json(context.values); }

json to_json(const TabulatedStrategy& strategy) {
  json entries = json::array();
  for (const auto& [ctx, action] : strategy.entries()) {
    entries.push_back(json{{"context", to_json(ctx)}, {"action", to_int(action)}});
  }
  return json{{"memory", strategy.memory()}, {"entries", std::move(entries)}};
}

json to_json(const ContextWeights& weights) {
  json list = json::array();
  for (const auto& [ctx, w] : weights.weights) list.push_back(json{{"context", to_json(ctx)}, {"weight", w.str()}});
  return json{{"memory", weights.memory}, {"weights", std::move(list)}, {"optimal_gain", weights.total_magnitude().str()}};
}

json to_json(const GainReport& report) {
  json list = json::array();
  for (const auto& [ctx, c] : report.contributions) {
    list.push_back(json{{"context", to_json(ctx)}, {"contribution", c.str()}});
  }
  return json{{"gain", report.gain.str()}, {"contributions", std::move(list)}};
}

json to_json(const Terminal& terminal) {
  return json{{"kind", to_string(terminal.kind)},
              {"first_index", terminal.first_index},
              {"cycle_length", terminal.cycle_length}};
}

json to_json(const BubbleReport& report) {
  json amps = json::array();
  for (const auto& a : report.amplitudes) amps.push_back(a.str());
  return json{{"amplitudes", std::move(amps)},
              {"peak_ratio", report.peak_ratio ? json(report.peak_ratio->str()) : json(nullptr)},
              {"flagged", report.flagged},
              {"threshold", report.threshold.str()}};
}

json to_json(const IterationResult& result) {
  json steps = json::array();
  for (std::size_t t = 0; t < result.trajectory.steps.size(); ++t) {
    const auto& step = result.trajectory.steps[t];
    steps.push_back(json{{"index", t},
                         {"memory", step.memory},
                         {"before", to_json(step.before)},
                         {"strategy", to_json(step.strategy)},
                         {"after", to_json(step.after)},
                         {"gain", step.gain.str()},
                         {"amplitude_before", step.amplitude_before.str()},
                         {"amplitude_after", step.amplitude_after.str()}});
  }
  json out{{"steps", std::move(steps)},
           {"terminal", to_json(result.trajectory.terminal)},
           {"bubble", to_json(result.bubble)}};
  if (!result.trajectory.steps.empty()) out["final"] = to_json(result.trajectory.steps.back().after);
  return out;
}

json to_json(const FeedoffReport& report) {
  const auto [first_b, second_b] = feedoff_b_positions(report.params);
  return json{{"m", report.params.m},
              {"mprime", report.params.m_prime},
              {"constants",
               json{{"a", report.params.a.str()},
                    {"aprime", report.params.a_prime.str()},
                    {"b", report.params.b.str()},
                    {"c", report.params.c.str()}}},
              {"b_positions", json::array({first_b, second_b})},
              {"gains",
               json{{"sm_on_p", report.sm_on_p.str()},
                    {"smprime_on_p", report.smprime_on_p.str()},
                    {"optimal_mprime_on_pm", report.optimal_mprime_on_pm.str()},
                    {"optimal_m_on_pm", report.optimal_m_on_pm.str()},
                    {"optimal_mprime_on_pmprime", report.optimal_mprime_on_pmprime.str()}}},
              {"inequality_holds", report.inequality_holds}};
}

json to_json(const SweepReport& report) {
  const auto& c = report.config;
  json values = json::array();
  for (const auto& v : c.value_set) values.push_back(v.str());
  json items = json::array();
  for (const auto& item : report.items) {
    items.push_back(json{{"index", item.index},
                         {"seed", item.seed},
                         {"flagged", item.flagged},
                         {"peak_ratio", item.peak_ratio ? json(item.peak_ratio->str()) : json(nullptr)},
                         {"terminal", to_string(item.terminal)}});
  }
  json histogram = json::array();
  for (const auto& [ratio, count] : report.ratio_histogram) histogram.push_back(json{{"ratio", ratio.str()}, {"count", count}});
  return json{{"config",
               json{{"count", c.count},
                    {"pattern_length", c.pattern_length},
                    {"value_set", std::move(values)},
                    {"memory", c.memory},
                    {"steps", c.steps},
                    {"threshold", c.threshold.str()},
                    {"seed", c.seed}}},
              {"items", std::move(items)},
              {"aggregate",
               json{{"flagged", report.flagged_count},
                    {"frequency", report.frequency.str()},
                    {"undefined_ratio", report.undefined_ratio_count},
                    {"ratio_histogram", std::move(histogram)}}}};
}

json to_json(const GainAutocorrComparison& comparison) {
  return json{{"optimal_gain_memory1", comparison.optimal_gain_memory1.str()},
              {"scaled_autocorr", comparison.scaled_autocorr.str()},
              {"plus_minus_one", comparison.plus_minus_one},
              {"inequality_holds", comparison.inequality_holds}};
}

std::string emit_trajectory_csv(const EvolutionTrajectory& trajectory) {
  std::string out = "step,position,value\n";
  const auto states = trajectory.states();
  for (std::size_t t = 0; t < states.size(); ++t) {
    const auto* det = std::get_if<DeterministicPattern>(&states[t]);
    if (det == nullptr) throw ValidationError("trajectory CSV supports deterministic patterns only; use JSON");
    for (std::size_t i = 0; i < det->size(); ++i) {
      out += std::to_string(t) + "," + std::to_string(i + 1) + "," + (*det)[i].str() + "\n";
    }
  }
  return out;
}

std::string emit_sweep_csv(const SweepReport& report) {
  std::string out = "seed,flagged,peak_ratio,terminal\n";
  for (const auto& item : report.items) {
    out += std::to_string(item.seed) + "," + (item.flagged ? "true" : "false") + "," + ratio_text(item.peak_ratio) +
           "," + to_string(item.terminal) + "\n";
  }
  out += "# count," + std::to_string(report.items.size()) + "\n";
  out += "# flagged," + std::to_string(report.flagged_count) + "\n";
  out += "# frequency," + report.frequency.str() + "\n";
  for (const auto& [ratio, count] : report.ratio_histogram) {
    out += "# histogram," + ratio.str() + "," + std::to_string(count) + "\n";
  }
  if (report.undefined_ratio_count > 0) {
    out += "# histogram,undefined," + std::to_string(report.undefined_ratio_count) + "\n";
  }
  return out;
}

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string escape_xml(const std::string& text) {
  std::string out;
  for (const char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

std::string emit_price_svg(const std::vector<Series>& series, const std::string& title) {
  constexpr double kWidth = 640;
  constexpr double kHeight = 400;
  constexpr double kLeft = 60;
  constexpr double kRight = 20;
  constexpr double kTop = 40;
  constexpr double kBottom = 40;
  static constexpr const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b"};

  std::size_t max_len = 0;
  std::optional<Rational> lo;
  std::optional<Rational> hi;
  for (const auto& s : series) {
    max_len = std::max(max_len, s.values.size());
    for (const auto& v : s.values) {
      if (!lo || v < *lo) lo = v;
      if (!hi || v > *hi) hi = v;
    }
  }
  const double y_min = lo ? lo->to_double() : 0.0;
  double y_max = hi ? hi->to_double() : 1.0;
  if (y_max <= y_min) y_max = y_min + 1.0;
  const double x_span = max_len > 1 ? static_cast<double>(max_len - 1) : 1.0;
  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;
  const auto px = [&](std::size_t i) { return kLeft + plot_w * static_cast<double>(i) / x_span; };
  const auto py = [&](double v) { return kTop + plot_h * (1.0 - (v - y_min) / (y_max - y_min)); };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
      << "\" viewBox=\"0 0 " << kWidth << " " << kHeight << "\">\n";
  svg << "  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg << "  <text x=\"" << fmt(kWidth / 2) << "\" y=\"24\" text-anchor=\"middle\" font-size=\"14\">"
      << escape_xml(title) << "</text>\n";
  svg << "  <g class=\"axes\" stroke=\"black\" stroke-width=\"1\">\n";
  svg << "    <line x1=\"" << fmt(kLeft) << "\" y1=\"" << fmt(kTop + plot_h) << "\" x2=\"" << fmt(kLeft + plot_w)
      << "\" y2=\"" << fmt(kTop + plot_h) << "\"/>\n";
  svg << "    <line x1=\"" << fmt(kLeft) << "\" y1=\"" << fmt(kTop) << "\" x2=\"" << fmt(kLeft) << "\" y2=\""
      << fmt(kTop + plot_h) << "\"/>\n";
  svg << "  </g>\n";
  svg << "  <g class=\"labels\" font-size=\"11\">\n";
  svg << "    <text x=\"" << fmt(kLeft - 6) << "\" y=\"" << fmt(py(y_min)) << "\" text-anchor=\"end\">"
      << (lo ? lo->str() : "0") << "</text>\n";
  svg << "    <text x=\"" << fmt(kLeft - 6) << "\" y=\"" << fmt(py(y_max)) << "\" text-anchor=\"end\">"
      << (hi ? hi->str() : "1") << "</text>\n";
  svg << "    <text x=\"" << fmt(kLeft) << "\" y=\"" << fmt(kHeight - 20) << "\">0</text>\n";
  svg << "    <text x=\"" << fmt(kLeft + plot_w) << "\" y=\"" << fmt(kHeight - 20) << "\" text-anchor=\"end\">"
      << (max_len > 0 ? max_len - 1 : 0) << "</text>\n";
  svg << "    <text x=\"" << fmt(kLeft + plot_w / 2) << "\" y=\"" << fmt(kHeight - 6)
      << "\" text-anchor=\"middle\">time</text>\n";
  svg << "  </g>\n";
  for (std::size_t k = 0; k < series.size(); ++k) {
    svg << "  <polyline class=\"series\" data-name=\"" << escape_xml(series[k].name) << "\" fill=\"none\" stroke=\""
        << kColors[k % std::size(kColors)] << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < series[k].values.size(); ++i) {
      if (i > 0) svg << ' ';
      svg << fmt(px(i)) << ',' << fmt(py(series[k].values[i].to_double()));
    }
    svg << "\"/>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

namespace {

std::vector<std::string> split_csv_line(std::string_view line) {
  std::vector<std::string> cells;
  std::string cell;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cell += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cell += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      cells.push_back(std::move(cell));
      cell.clear();
    } else {
      cell += c;
    }
  }
  cells.push_back(std::move(cell));
  for (auto& c : cells) {
    const auto first = c.find_first_not_of(" \t\r");
    const auto last = c.find_last_not_of(" \t\r");
    c = first == std::string::npos ? std::string{} : c.substr(first, last - first + 1);
  }
  return cells;
}

std::optional<Rational> try_decimal(const std::string& cell) {
  try {
    return Rational::parse_decimal(cell);
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

}  // namespace

IngestResult ingest_csv(std::string_view csv_text, const IngestSpec& spec) {
  std::vector<std::vector<std::string>> rows;
  std::size_t start = 0;
  while (start <= csv_text.size()) {
    auto end = csv_text.find('\n', start);
    if (end == std::string_view::npos) end = csv_text.size();
    const auto line = csv_text.substr(start, end - start);
    if (line.find_first_not_of(" \t\r") != std::string_view::npos) rows.push_back(split_csv_line(line));
    start = end + 1;
  }
  if (rows.empty()) throw ValidationError("empty series: no rows in " + spec.source);

  std::optional<std::size_t> column;
  const auto& first = rows.front();
  const auto named = std::find(first.begin(), first.end(), spec.column);
  bool header = false;
  if (named != first.end() && !try_decimal(*named)) {
    column = static_cast<std::size_t>(named - first.begin());
    header = true;
  } else {
    std::size_t idx = 0;
    const auto [ptr, ec] = std::from_chars(spec.column.data(), spec.column.data() + spec.column.size(), idx);
    if (spec.column.empty() || ec != std::errc{} || ptr != spec.column.data() + spec.column.size()) {
      throw ValidationError("column '" + spec.column + "' not found in header");
    }
    column = idx;
    header = column < first.size() && !try_decimal(first[*column]);
  }

  std::vector<Rational> series;
  for (std::size_t r = header ? 1 : 0; r < rows.size(); ++r) {
    if (*column >= rows[r].size()) {
      throw ValidationError("row " + std::to_string(r + 1) + ": missing column " + spec.column);
    }
    const auto value = try_decimal(rows[r][*column]);
    if (!value) {
      throw ValidationError("row " + std::to_string(r + 1) + ": non-numeric cell '" + rows[r][*column] + "'");
    }
    series.push_back(*value);
  }

  std::vector<Rational> returns;
  if (spec.mode == IngestMode::kPrices) {
    if (series.size() < 2) throw ValidationError("empty series: prices mode needs at least two prices");
    for (std::size_t i = 1; i < series.size(); ++i) returns.push_back(series[i] - series[i - 1]);
  } else {
    returns = series;
  }
  if (returns.empty()) throw ValidationError("empty series");
  if (spec.quantum) {
    for (auto& r : returns) r = round_to_multiple(r, *spec.quantum);
  }

  IngestResult result{DeterministicPattern(std::move(returns)), {}};
  result.provenance.push_back("source: " + spec.source);
  result.provenance.push_back("column: " + spec.column);
  result.provenance.push_back(std::string("mode: ") + (spec.mode == IngestMode::kPrices ? "prices" : "returns"));
  if (spec.mode == IngestMode::kPrices) result.provenance.push_back("first price: " + series.front().str());
  result.provenance.push_back("quantum: " + (spec.quantum ? spec.quantum->str() : std::string("none")));
  result.provenance.push_back("observations: " + std::to_string(series.size()));
  result.provenance.push_back(
      "assumption: the whole series is one pattern block repeated periodically; windows at the start wrap to "
      "the end of the series");
  return result;
}

IngestResult ingest(const IngestSpec& spec) {
  std::ifstream in(spec.source, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + spec.source);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return ingest_csv(buffer.str(), spec);
}

}  // namespace mktmem::io
