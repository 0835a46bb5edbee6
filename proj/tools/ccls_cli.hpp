#ifndef CCLS_TOOLS_CLI_HPP
#define CCLS_TOOLS_CLI_HPP

#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "ccls/ccls.hpp"

namespace ccls::cli {

enum ExitCode { Success = 0, Usage = 1, ParseFailure = 2, ModelFailure = 3, ResourceFailure = 4,
                InternalFailure = 5 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CommonOptions {
  std::string file;
  std::vector<std::string> params;
  std::vector<std::string> eliminate;
  std::string totals;
  bool json = false;
};

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline std::vector<long long> parse_integer_list(std::string text, const std::string& what) {
  if (!text.empty() && text.front() == '[') {
    if (text.back() != ']') throw UsageError("malformed " + what + " '" + text + "'");
    text = text.substr(1, text.size() - 2);
  }
  std::vector<long long> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto r = parse_rational(item);
    if (!r || !is_integer(*r) || !r->get_num().fits_slong_p()) {
      throw UsageError("malformed " + what + " '" + text + "'");
    }
    out.push_back(r->get_num().get_si());
  }
  if (out.empty()) throw UsageError("empty " + what);
  return out;
}

inline ReactionNetwork load_network(const CommonOptions& o) {
  ReactionNetwork net = [&] {
    const std::string text = read_file(o.file);
    try {
      return parse_network(text);
    } catch (const ParseError& e) {
      throw ParseError(e.line(), e.column(), o.file + ": " + e.message());
    }
  }();
  std::map<std::string, Rational> overrides;
  for (const auto& p : o.params) {
    const auto eq = p.find('=');
    if (eq == std::string::npos) throw UsageError("expected name=value in --param '" + p + "'");
    auto value = parse_rational(p.substr(eq + 1));
    if (!value) throw UsageError("malformed value in --param '" + p + "'");
    overrides[p.substr(0, eq)] = *value;
  }
  return overrides.empty() ? net : net.with_parameters(overrides);
}

inline std::vector<long long> resolve_totals(const Analysis& a, const std::string& text) {
  if (text.empty()) return a.initial_totals();
  auto totals = parse_integer_list(text, "totals");
  if (totals.size() != a.graph.component_count()) {
    throw UsageError("--totals needs " + std::to_string(a.graph.component_count()) +
                     " values, one per component");
  }
  return totals;
}

inline void emit(const AnalysisReport& r, bool json, std::ostream& out) {
  out << (json ? render_json(r) : render_text(r));
}

inline int cmd_analyze(const CommonOptions& o, bool with_chain, bool dot, std::ostream& out) {
  Analysis a = Analysis::build(load_network(o), o.eliminate);
  EnumerationReport e = a.enumerate();
  AnalysisReport r = make_analysis_report(a, e);
  if (with_chain) {
    ProjectedChain chain(a.network, a.matrix, a.graph, a.projection, resolve_totals(a, o.totals),
                         state_cap_from_environment());
    r.chain = chain_summary(chain, e.functions);
  }
  if (dot) {
    out << to_dot(a.graph, a.network.species());
    return Success;
  }
  emit(r, o.json, out);
  return Success;
}

struct BoundsOptions {
  std::string level_fn;
  std::string direction = "up";
  bool exact = false;
  std::optional<std::uint64_t> simulate;
  std::optional<std::uint64_t> seed;
  unsigned threads = 0;
};

inline int cmd_bounds(const CommonOptions& o, const BoundsOptions& b, std::ostream& out) {
  if (b.direction != "up" && b.direction != "down") {
    throw UsageError("--direction must be 'up' or 'down'");
  }
  if (b.simulate && !b.seed) throw UsageError("--simulate requires an explicit --seed");
  Analysis a = Analysis::build(load_network(o), o.eliminate);
  EnumerationReport e = a.enumerate();
  AnalysisReport r = make_analysis_report(a, e);
  LevelFunction fn;
  const bool coefficients = b.level_fn.find(',') != std::string::npos ||
                            (!b.level_fn.empty() && b.level_fn.front() == '[');
  if (coefficients) {
    fn = a.function_from_coefficients(parse_integer_list(b.level_fn, "level function"));
  } else {
    const auto idx = parse_integer_list(b.level_fn, "level function index");
    if (idx.size() != 1 || idx[0] < 1 || static_cast<std::size_t>(idx[0]) > e.functions.size()) {
      throw UsageError("level function index must be between 1 and " +
                       std::to_string(e.functions.size()));
    }
    fn = e.functions[static_cast<std::size_t>(idx[0] - 1)];
  }
  ProjectedChain chain(a.network, a.matrix, a.graph, a.projection, resolve_totals(a, o.totals),
                       state_cap_from_environment());
  BoundsRequest req;
  req.up = b.direction == "up";
  req.exact = b.exact;
  req.trajectories = b.simulate;
  req.seed = b.seed.value_or(0);
  req.threads = b.threads;
  r.bounds = compute_bounds_section(a, chain, fn, req);
  emit(r, o.json, out);
  return Success;
}

inline int cmd_example(const std::string& name, long long ntot, bool analyze,
                       const std::string& output, bool json, std::ostream& out) {
  const std::string text = builtin_source(name, ntot);
  if (!output.empty()) {
    std::ofstream f(output, std::ios::binary);
    if (!f) throw UsageError("cannot write '" + output + "'");
    f << text;
  } else if (!analyze) {
    out << text;
  }
  if (analyze) {
    Analysis a = Analysis::build(parse_network(text));
    EnumerationReport e = a.enumerate();
    AnalysisReport r = make_analysis_report(a, e);
    ProjectedChain chain(a.network, a.matrix, a.graph, a.projection, a.initial_totals(),
                         state_cap_from_environment());
    r.chain = chain_summary(chain, e.functions);
    emit(r, json, out);
  }
  return Success;
}

/// Runs the command line; returns the process exit code.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Coclique level structures and mean first passage time bounds for reaction "
               "networks whose reactions convert one molecule into another"};
  app.require_subcommand(1);

  CommonOptions common;
  bool with_chain = false;
  bool dot = false;
  auto* analyze = app.add_subcommand("analyze", "find every coclique level function");
  analyze->add_option("file", common.file, "network source file")->required();
  analyze->add_option("--totals", common.totals,
                      "conserved total per component, comma separated (default: init counts)");
  analyze->add_option("--param", common.params, "override a parameter, name=value");
  analyze->add_option("--eliminate", common.eliminate, "species to project out of its component");
  analyze->add_flag("--json", common.json, "emit JSON");
  analyze->add_flag("--dot", dot, "print the species graph in Graphviz format");

  BoundsOptions bo;
  std::uint64_t simulate = 0;
  std::uint64_t seed = 0;
  auto* bounds = app.add_subcommand("bounds", "mean first passage time bounds between extreme levels");
  bounds->add_option("file", common.file, "network source file")->required();
  bounds->add_option("--level-fn", bo.level_fn,
                     "1-based index of a listed level function, or coefficients like 1,-1")
      ->required();
  bounds->add_option("--totals", common.totals, "conserved total per component");
  bounds->add_option("--direction", bo.direction, "up (lowest to highest level) or down")
      ->check(CLI::IsMember({"up", "down"}));
  bounds->add_flag("--exact", bo.exact, "add the exact mean passage time");
  auto* sim_opt = bounds->add_option("--simulate", simulate, "number of simulated trajectories");
  auto* seed_opt = bounds->add_option("--seed", seed, "simulation seed");
  bounds->add_option("--threads", bo.threads, "simulation threads (0: all cores)");
  bounds->add_option("--param", common.params, "override a parameter, name=value");
  bounds->add_option("--eliminate", common.eliminate, "species to project out of its component");
  bounds->add_flag("--json", common.json, "emit JSON");

  std::string example_name;
  long long ntot = 2;
  bool example_analyze = false;
  std::string output;
  auto* example = app.add_subcommand("example", "print a built-in example network");
  example->add_option("name", example_name, "example name")->required();
  example->add_option("--ntot", ntot, "conserved total for each initial species")
      ->check(CLI::NonNegativeNumber);
  example->add_flag("--analyze", example_analyze, "analyze the example");
  example->add_option("-o,--output", output, "write the network to this file");
  example->add_flag("--json", common.json, "emit JSON with --analyze");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return Success;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return Success;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return Usage;
  }

  try {
    if (analyze->parsed()) return cmd_analyze(common, with_chain || !common.totals.empty(), dot, out);
    if (bounds->parsed()) {
      if (*sim_opt) bo.simulate = simulate;
      if (*seed_opt) bo.seed = seed;
      return cmd_bounds(common, bo, out);
    }
    if (example->parsed()) {
      if (!find_builtin(example_name)) {
        err << "error: unknown example '" << example_name << "'; valid names:";
        for (const auto& n : builtin_names()) err << ' ' << n;
        err << "\n";
        return Usage;
      }
      return cmd_example(example_name, ntot, example_analyze, output, common.json, out);
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return Usage;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return ParseFailure;
  } catch (const ModelError& e) {
    err << "model error: " << e.what() << "\n";
    return ModelFailure;
  } catch (const ResourceError& e) {
    err << "resource limit: " << e.what() << "\n";
    return ResourceFailure;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return InternalFailure;
  }
  return Usage;
}

}  // namespace ccls::cli

#endif  // CCLS_TOOLS_CLI_HPP
