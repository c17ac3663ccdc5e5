#include "cli.hpp"

#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "mktmem/analytics.hpp"
#include "mktmem/constructions.hpp"
#include "mktmem/errors.hpp"
#include "mktmem/evolution.hpp"
#include "mktmem/io.hpp"
#include "mktmem/strategy.hpp"

namespace mktmem::cli {
namespace {

using nlohmann::json;

struct Options {
  std::string pattern;
  std::size_t memory = 1;
  std::vector<std::size_t> schedule;
  std::size_t steps = 1;
  std::string theta = "3/2";
  std::uint64_t seed = 1;
  std::string format = "json";
  std::string out;

  std::string strategy;
  std::string kind;
  std::string name;
  std::size_t m = 2;
  std::size_t m_prime = 3;
  std::string a = "10";
  std::string a_prime = "20";
  std::string b = "30";
  std::string c = "40";
  std::size_t max_memory = 5;
  std::vector<std::size_t> order;
  bool shuffle = false;
  bool freeze = false;
  std::size_t count = 100;
  std::size_t length = 20;
  std::string values = "-3,-2,-1,1,2,3";
  unsigned threads = 0;
  std::string csv;
  std::string column = "0";
  std::string mode = "prices";
  std::string quantum;
  std::string start = "0";
  bool memory_given = false;
  bool steps_given = false;
};

struct LoadedPattern {
  Pattern pattern;
  std::string source;
  std::vector<std::string> notes;
};

LoadedPattern load_pattern(const std::string& ref) {
  if (ref.empty()) throw ValidationError("--pattern is required");
  if (std::filesystem::exists(ref)) {
    std::ifstream in(ref, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + ref);
    std::ostringstream text;
    text << in.rdbuf();
    return {io::parse_pattern(text.str()), ref, {}};
  }
  if (ref == "faircoin") return {fair_coin_pattern(), ref, {}};
  const auto& entry = figure_pattern(ref);
  return {entry.pattern, ref, entry.notes};
}

std::vector<Rational> parse_rational_list(const std::string& text) {
  std::vector<Rational> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(Rational::parse(item));
  if (out.empty()) throw ValidationError("empty value list");
  return out;
}

std::vector<std::size_t> schedule_from(const Options& o) {
  if (!o.schedule.empty()) return o.schedule;
  return std::vector<std::size_t>(o.steps, o.memory);
}

void write(const Options& o, const std::string& text, std::ostream& out) {
  if (o.out.empty()) {
    out << text;
    return;
  }
  std::ofstream file(o.out, std::ios::binary);
  if (!file) throw std::runtime_error("cannot write " + o.out);
  file << text;
  if (!file) throw std::runtime_error("failed writing " + o.out);
}

std::string dump(const json& doc) { return doc.dump(2) + "\n"; }

bool csv_mode(const Options& o) { return o.format == "csv"; }

std::string pattern_output(const Options& o, const Pattern& pattern) {
  if (!csv_mode(o)) return io::serialize_pattern(pattern);
  std::string text = "scenario,prob,position,value\n";
  const auto scenarios = as_scenarios(pattern);
  for (std::size_t s = 0; s < scenarios.scenario_count(); ++s) {
    const auto& sc = scenarios.scenario(s);
    for (std::size_t i = 0; i < sc.outcome.size(); ++i) {
      text += std::to_string(s) + "," + sc.probability.str() + "," + std::to_string(i + 1) + "," + sc.outcome[i].str() + "\n";
    }
  }
  return text;
}

FeedoffParams feedoff_params(const Options& o) {
  FeedoffParams p;
  p.m = o.m;
  p.m_prime = o.m_prime;
  p.a = Rational::parse(o.a);
  p.a_prime = Rational::parse(o.a_prime);
  p.b = Rational::parse(o.b);
  p.c = Rational::parse(o.c);
  return p;
}

std::string cmd_gain(const Options& o) {
  const auto loaded = load_pattern(o.pattern);
  const auto scenarios = as_scenarios(loaded.pattern);
  TabulatedStrategy strategy = optimal_strategy(scenarios, o.memory);
  if (!o.strategy.empty()) {
    std::ifstream in(o.strategy, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + o.strategy);
    std::ostringstream text;
    text << in.rdbuf();
    strategy = io::parse_strategy(text.str());
  }
  const auto report = gain(strategy, scenarios);
  if (csv_mode(o)) {
    std::string text = "context,contribution\n";
    for (const auto& [ctx, c] : report.contributions) text += "\"" + to_string(ctx) + "\"," + c.str() + "\n";
    return text + "# gain," + report.gain.str() + "\n";
  }
  json doc = io::to_json(report);
  doc["memory"] = strategy.memory();
  return dump(doc);
}

std::string cmd_optimal(const Options& o) {
  const auto loaded = load_pattern(o.pattern);
  const auto strategy = optimal_strategy(as_scenarios(loaded.pattern), o.memory);
  if (csv_mode(o)) {
    std::string text = "context,action\n";
    for (const auto& [ctx, a] : strategy.entries()) text += "\"" + to_string(ctx) + "\"," + std::to_string(to_int(a)) + "\n";
    return text;
  }
  return dump(io::to_json(strategy));
}

std::string cmd_evolve(const Options& o) {
  const auto loaded = load_pattern(o.pattern);
  TabulatedStrategy strategy = optimal_strategy(as_scenarios(loaded.pattern), o.memory);
  if (!o.strategy.empty()) {
    std::ifstream in(o.strategy, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + o.strategy);
    std::ostringstream text;
    text << in.rdbuf();
    strategy = io::parse_strategy(text.str());
  }
  return pattern_output(o, evolve(loaded.pattern, strategy));
}

std::string cmd_iterate(const Options& o) {
  const auto loaded = load_pattern(o.pattern);
  IterateOptions options;
  options.threshold = Rational::parse(o.theta);
  options.freeze_strategy = o.freeze;
  const auto schedule = schedule_from(o);
  const auto result = iterate(loaded.pattern, schedule, options);
  if (csv_mode(o)) return io::emit_trajectory_csv(result.trajectory);
  json doc = io::to_json(result);
  doc["schedule"] = schedule;
  doc["notes"] = loaded.notes;
  return dump(doc);
}

std::string cmd_efficient(const Options& o) {
  const auto loaded = load_pattern(o.pattern);
  const auto g = optimal_gain(as_scenarios(loaded.pattern), o.memory);
  const bool efficient = g.is_zero();
  if (csv_mode(o)) return "memory,efficient,optimal_gain\n" + std::to_string(o.memory) + "," + (efficient ? "true" : "false") + "," + g.str() + "\n";
  return dump(json{{"memory", o.memory}, {"efficient", efficient}, {"optimal_gain", g.str()}});
}

std::string cmd_min_memory(const Options& o) {
  const auto loaded = load_pattern(o.pattern);
  const auto m = min_inefficient_memory(as_scenarios(loaded.pattern), o.max_memory);
  if (csv_mode(o)) return "max_memory,min_inefficient_memory\n" + std::to_string(o.max_memory) + "," + (m ? std::to_string(*m) : "none") + "\n";
  return dump(json{{"max_memory", o.max_memory}, {"min_inefficient_memory", m ? json(*m) : json(nullptr)}});
}

std::string cmd_construct(const Options& o) {
  if (o.kind == "parity") return pattern_output(o, parity_pattern(o.memory));
  if (o.kind == "feedoff") return pattern_output(o, feedoff_pattern(feedoff_params(o)));
  if (o.kind == "figure") return pattern_output(o, figure_pattern(o.name).pattern);
  if (o.kind == "faircoin") return pattern_output(o, fair_coin_pattern());
  throw ValidationError("unknown construction '" + o.kind + "' (parity, feedoff, figure, faircoin)");
}

std::string cmd_feedoff_report(const Options& o) {
  const auto report = feedoff_report(feedoff_params(o));
  if (csv_mode(o)) {
    std::string text = "quantity,value\n";
    text += "sm_on_p," + report.sm_on_p.str() + "\n";
    text += "smprime_on_p," + report.smprime_on_p.str() + "\n";
    text += "optimal_mprime_on_pm," + report.optimal_mprime_on_pm.str() + "\n";
    text += "optimal_m_on_pm," + report.optimal_m_on_pm.str() + "\n";
    text += "optimal_mprime_on_pmprime," + report.optimal_mprime_on_pmprime.str() + "\n";
    text += std::string("inequality_holds,") + (report.inequality_holds ? "true" : "false") + "\n";
    return text;
  }
  return dump(io::to_json(report));
}

std::string cmd_expand(const Options& o) {
  const auto loaded = load_pattern(o.pattern);
  ExpansionOrder order = IdentityOrder{};
  if (!o.order.empty()) order = o.order;
  if (o.shuffle) order = ShuffleSeed{o.seed};
  return pattern_output(o, expand_to_deterministic(as_scenarios(loaded.pattern), order));
}

std::string cmd_sweep(const Options& o) {
  SweepConfig config;
  config.count = o.count;
  config.pattern_length = o.length;
  config.value_set = parse_rational_list(o.values);
  if (o.memory_given) config.memory = o.memory;
  if (o.steps_given) config.steps = o.steps;
  config.threshold = Rational::parse(o.theta);
  config.seed = o.seed;
  const auto report = sweep(config, o.threads);
  if (csv_mode(o)) return io::emit_sweep_csv(report);
  return dump(io::to_json(report));
}

std::string cmd_autocorr(const Options& o) {
  const auto loaded = load_pattern(o.pattern);
  const auto* det = std::get_if<DeterministicPattern>(&loaded.pattern);
  if (det == nullptr) throw ValidationError("autocorr needs a deterministic pattern");
  const auto r = autocorr1(*det);
  const auto cmp = compare_gain_autocorr(*det);
  if (csv_mode(o)) {
    return "autocorr1,optimal_gain_memory1,scaled_autocorr,inequality_holds\n" + r.str() + "," +
           cmp.optimal_gain_memory1.str() + "," + cmp.scaled_autocorr.str() + "," + (cmp.inequality_holds ? "true" : "false") + "\n";
  }
  json doc = io::to_json(cmp);
  doc["autocorr1"] = r.str();
  return dump(doc);
}

std::string cmd_ingest(const Options& o) {
  io::IngestSpec spec;
  spec.source = o.csv;
  spec.column = o.column;
  if (o.mode == "prices") {
    spec.mode = io::IngestMode::kPrices;
  } else if (o.mode == "returns") {
    spec.mode = io::IngestMode::kReturns;
  } else {
    throw ValidationError("--mode must be prices or returns");
  }
  if (!o.quantum.empty()) spec.quantum = Rational::parse_decimal(o.quantum);
  const auto result = io::ingest(spec);
  if (csv_mode(o)) {
    std::string text;
    for (const auto& line : result.provenance) text += "# " + line + "\n";
    text += "position,value\n";
    for (std::size_t i = 0; i < result.pattern.size(); ++i) text += std::to_string(i + 1) + "," + result.pattern[i].str() + "\n";
    return text;
  }
  return dump(json{{"provenance", result.provenance}, {"pattern", io::to_json(Pattern{result.pattern})}});
}

std::string cmd_plot(const Options& o) {
  const auto loaded = load_pattern(o.pattern);
  const auto* det = std::get_if<DeterministicPattern>(&loaded.pattern);
  if (det == nullptr) throw ValidationError("plot needs a deterministic pattern");
  const Rational start = Rational::parse(o.start);
  std::vector<io::Series> series;
  series.push_back({"step 0", price_path(*det, start).prices});
  if (!o.schedule.empty()) {
    IterateOptions options;
    options.threshold = Rational::parse(o.theta);
    const auto result = iterate(loaded.pattern, o.schedule, options);
    for (std::size_t t = 0; t < result.trajectory.steps.size(); ++t) {
      series.push_back({"step " + std::to_string(t + 1),
                        price_path(std::get<DeterministicPattern>(result.trajectory.steps[t].after), start).prices});
    }
  }
  return io::emit_price_svg(series, "price path: " + loaded.source);
}

json error_payload(const std::string& kind, const std::exception& e) {
  json doc{{"error", {{"kind", kind}, {"message", e.what()}}}};
  if (const auto* v = dynamic_cast<const ValidationError*>(&e); v != nullptr && !v->violations().empty()) {
    doc["error"]["violations"] = v->violations();
  }
  if (const auto* b = dynamic_cast<const BoundaryDependent*>(&e); b != nullptr) {
    doc["error"]["scenario"] = b->scenario();
    doc["error"]["position"] = b->position();
  }
  return doc;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Memory-bounded market efficiency: gains, optimal strategies, market evolution"};
  app.name("mktmem");
  app.fallthrough();
  app.require_subcommand(1);

  app.add_option("--pattern", o.pattern, "Pattern JSON file or catalog name (fig1, fig2, faircoin)");
  app.add_option("--memory", o.memory, "Strategy memory m")->check(CLI::PositiveNumber);
  app.add_option("--schedule", o.schedule, "Comma-separated memories, one per evolution step")->delimiter(',');
  app.add_option("--steps", o.steps, "Steps when no schedule is given")->check(CLI::PositiveNumber);
  app.add_option("--theta", o.theta, "Bubble threshold on the peak amplitude ratio");
  app.add_option("--seed", o.seed, "Seed for random patterns or shuffles");
  app.add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--out", o.out, "Write output to this path instead of stdout");

  std::string chosen;
  const auto sub = [&](const char* name, const char* help) {
    auto* s = app.add_subcommand(name, help);
    s->callback([&chosen, name] { chosen = name; });
    return s;
  };

  auto* gain_cmd = sub("gain", "Gain of a strategy (default: the optimal one) on a pattern");
  gain_cmd->add_option("--strategy", o.strategy, "Strategy JSON file");
  sub("optimal", "Tie-to-zero optimal memory-m strategy");
  auto* evolve_cmd = sub("evolve", "One evolution step by the optimal (or given) strategy");
  evolve_cmd->add_option("--strategy", o.strategy, "Strategy JSON file");
  auto* iterate_cmd = sub("iterate", "Repeated optimal evolution with bubble and cycle detection");
  iterate_cmd->add_flag("--freeze", o.freeze, "Reuse the step-0 strategy every step");
  sub("efficient", "Whether no memory-m strategy has positive gain");
  auto* min_cmd = sub("min-memory", "Smallest memory at which the pattern is inefficient");
  min_cmd->add_option("--max-memory", o.max_memory, "Largest memory scanned")->check(CLI::PositiveNumber);
  auto* construct_cmd = sub("construct", "Generate a construction pattern");
  construct_cmd->add_option("kind", o.kind, "parity | feedoff | figure | faircoin")->required();
  construct_cmd->add_option("--name", o.name, "Catalog name for figure");
  auto* feedoff_cmd = sub("feedoff-report", "Gains of the feed-off construction");
  for (auto* s : {construct_cmd, feedoff_cmd}) {
    s->add_option("--m", o.m, "Low memory m");
    s->add_option("--mprime", o.m_prime, "High memory m'");
    s->add_option("--a", o.a, "Constant a");
    s->add_option("--aprime", o.a_prime, "Constant a'");
    s->add_option("--b", o.b, "Constant b");
    s->add_option("--c", o.c, "Constant c");
  }
  auto* expand_cmd = sub("expand", "Expand a scenario pattern into one deterministic block");
  expand_cmd->add_option("--order", o.order, "Scenario permutation, comma-separated")->delimiter(',');
  expand_cmd->add_flag("--shuffle", o.shuffle, "Shuffle replicated blocks with --seed");
  auto* sweep_cmd = sub("sweep", "Bubble statistics over seeded random patterns");
  sweep_cmd->add_option("--count", o.count, "Number of patterns")->check(CLI::PositiveNumber);
  sweep_cmd->add_option("--length", o.length, "Pattern length")->check(CLI::PositiveNumber);
  sweep_cmd->add_option("--values", o.values, "Comma-separated value set");
  sweep_cmd->add_option("--threads", o.threads, "Worker threads (0 = hardware)");
  sub("autocorr", "Sign autocorrelation versus optimal memory-1 gain");
  auto* ingest_cmd = sub("ingest", "Read a CSV column as one pattern block");
  ingest_cmd->add_option("--csv", o.csv, "CSV file")->required();
  ingest_cmd->add_option("--column", o.column, "Header name or 0-based index");
  ingest_cmd->add_option("--mode", o.mode, "prices | returns");
  ingest_cmd->add_option("--quantum", o.quantum, "Round returns to multiples of this");
  auto* plot_cmd = sub("plot", "SVG price paths of a pattern and, with --schedule, its evolutions");
  plot_cmd->add_option("--start", o.start, "Starting price");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }
  o.memory_given = app.get_option("--memory")->count() > 0;
  o.steps_given = app.get_option("--steps")->count() > 0;

  static const std::map<std::string, std::function<std::string(const Options&)>> commands{
      {"gain", cmd_gain},         {"optimal", cmd_optimal},
      {"evolve", cmd_evolve},     {"iterate", cmd_iterate},
      {"efficient", cmd_efficient}, {"min-memory", cmd_min_memory},
      {"construct", cmd_construct}, {"feedoff-report", cmd_feedoff_report},
      {"expand", cmd_expand},     {"sweep", cmd_sweep},
      {"autocorr", cmd_autocorr}, {"ingest", cmd_ingest},
      {"plot", cmd_plot},
  };

  const auto fail = [&](const std::string& kind, const std::exception& e, int code) {
    if (o.format == "json") out << dump(error_payload(kind, e));
    err << "error: " << e.what() << "\n";
    return code;
  };

  try {
    write(o, commands.at(chosen)(o), out);
    return kExitOk;
  } catch (const BoundaryDependent& e) {
    return fail("boundary-dependent", e, kExitValidation);
  } catch (const ParseError& e) {
    return fail("parse", e, kExitValidation);
  } catch (const ValidationError& e) {
    return fail("validation", e, kExitValidation);
  } catch (const LookupError& e) {
    return fail("lookup", e, kExitValidation);
  } catch (const CapExceeded& e) {
    return fail("cap-exceeded", e, kExitValidation);
  } catch (const std::invalid_argument& e) {
    return fail("validation", e, kExitValidation);
  } catch (const std::overflow_error& e) {
    return fail("overflow", e, kExitValidation);
  } catch (const std::exception& e) {
    return fail("io", e, kExitIo);
  }
}

}  // namespace mktmem::cli
