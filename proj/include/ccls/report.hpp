#ifndef CCLS_REPORT_HPP
#define CCLS_REPORT_HPP

#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "ccls/analysis.hpp"
#include "ccls/bounds.hpp"
#include "ccls/chain.hpp"
#include "ccls/exact.hpp"
#include "ccls/rational.hpp"
#include "ccls/simulation.hpp"

namespace ccls {

inline constexpr int report_schema = 1;

struct RationalField {
  std::string exact;  // "p/q" or integer
  double value = 0;

  static RationalField of(const Rational& r) { return {r.get_str(), to_double(r)}; }
  friend bool operator==(const RationalField&, const RationalField&) = default;
};

struct BoundField {
  std::optional<RationalField> value;
  std::optional<long long> blocked_level;
  std::string reason;

  static BoundField of(const BoundValue& b) {
    BoundField f;
    if (b.value) f.value = RationalField::of(*b.value);
    f.blocked_level = b.blocked_level;
    f.reason = b.reason;
    return f;
  }
  friend bool operator==(const BoundField&, const BoundField&) = default;
};

struct LevelRow {
  long long level = 0;
  std::size_t states = 0;
  RationalField lambda_min, lambda_max, gamma_min, gamma_max;
  friend bool operator==(const LevelRow&, const LevelRow&) = default;
};

struct ExactField {
  std::vector<std::vector<long long>> sources;
  std::vector<RationalField> values;
  RationalField min, max;
  friend bool operator==(const ExactField&, const ExactField&) = default;
};

struct SimulationField {
  std::vector<long long> source;
  double mean = 0;
  double half_width_95 = 0;
  std::uint64_t trajectories = 0;
  std::uint64_t seed = 0;
  friend bool operator==(const SimulationField&, const SimulationField&) = default;
};

struct BoundsSection {
  std::vector<long long> coefficients;
  std::string function;
  std::string direction;  // "up" or "down"
  std::vector<long long> totals;
  long long lower_level = 0;
  long long upper_level = 0;
  std::vector<LevelRow> levels;
  BoundField lower, upper;
  std::optional<ExactField> exact;
  std::optional<SimulationField> simulation;
  std::vector<std::string> notes;
  friend bool operator==(const BoundsSection&, const BoundsSection&) = default;
};

struct ComponentField {
  std::size_t id = 0;
  std::vector<std::string> species;
  std::string eliminated;
  bool bipartite = true;
  bool degenerate = false;
  std::vector<std::string> coclique_b, coclique_c, odd_cycle;
  std::size_t representative_columns = 0;
  bool enumerated = false;
  friend bool operator==(const ComponentField&, const ComponentField&) = default;
};

struct FunctionField {
  std::vector<long long> coefficients;
  std::string text;
  std::vector<int> signs;
  friend bool operator==(const FunctionField&, const FunctionField&) = default;
};

struct CocliqueField {
  std::size_t function = 0;  // 1-based index into functions
  bool ok = true;
  long long lower_level = 0;
  long long upper_level = 0;
  std::size_t violations = 0;
  std::string error;  // set when the level structure could not be formed
  friend bool operator==(const CocliqueField&, const CocliqueField&) = default;
};

struct ChainField {
  std::vector<long long> totals;
  std::size_t states = 0;
  std::size_t transitions = 0;
  std::vector<CocliqueField> checks;
  friend bool operator==(const ChainField&, const ChainField&) = default;
};

struct NetworkField {
  std::vector<std::string> species;
  std::vector<std::pair<std::string, RationalField>> parameters;
  std::size_t reactions = 0;
  std::vector<std::vector<int>> columns;
  std::vector<std::vector<long long>> conservation;
  friend bool operator==(const NetworkField&, const NetworkField&) = default;
};

struct AnalysisReport {
  int schema = report_schema;
  NetworkField network;
  std::vector<std::string> coordinates;
  std::vector<ComponentField> components;
  std::vector<FunctionField> functions;
  std::uint64_t rejected_assignments = 0;
  std::vector<std::string> odd_cycle;
  std::vector<std::string> notes;
  std::optional<ChainField> chain;
  std::optional<BoundsSection> bounds;
  friend bool operator==(const AnalysisReport&, const AnalysisReport&) = default;
};

// ---------------------------------------------------------------------------
// Building

inline std::vector<std::string> species_names(const ReactionNetwork& net,
                                              const std::vector<std::size_t>& idx) {
  std::vector<std::string> out;
  for (std::size_t i : idx) out.push_back(net.species()[i]);
  return out;
}

inline AnalysisReport make_analysis_report(const Analysis& a, const EnumerationReport& e) {
  AnalysisReport r;
  r.network.species = a.network.species();
  for (const auto& [name, value] : a.network.parameters()) {
    r.network.parameters.emplace_back(name, RationalField::of(value));
  }
  r.network.reactions = a.network.reactions().size();
  r.network.columns = a.matrix.columns;
  r.network.conservation = conservation_basis(a.matrix);
  r.coordinates = a.coordinate_names();
  for (const auto& c : e.components) {
    ComponentField f;
    f.id = c.id;
    f.species = species_names(a.network, a.graph.components[c.id]);
    f.eliminated = a.network.species()[a.projection.eliminated[c.id]];
    f.bipartite = c.partition.bipartite;
    f.degenerate = c.partition.degenerate;
    f.coclique_b = species_names(a.network, c.partition.b);
    f.coclique_c = species_names(a.network, c.partition.c);
    f.odd_cycle = species_names(a.network, c.partition.odd_cycle);
    f.representative_columns = c.representatives;
    f.enumerated = c.enumerated;
    r.components.push_back(std::move(f));
  }
  for (const auto& fn : e.functions) {
    r.functions.push_back({fn.coefficients, describe_function(fn.coefficients, r.coordinates),
                           fn.signs});
  }
  r.rejected_assignments = e.rejected;
  if (e.obstruction) r.odd_cycle = species_names(a.network, *e.obstruction);
  r.notes = e.notes;
  return r;
}

inline ChainField chain_summary(const ProjectedChain& chain,
                                const std::vector<LevelFunction>& functions) {
  ChainField c;
  c.totals = chain.totals();
  c.states = chain.size();
  for (const auto& row : chain.generator()) c.transitions += row.size();
  for (std::size_t i = 0; i < functions.size(); ++i) {
    CocliqueField f;
    f.function = i + 1;
    try {
      const LevelStructure ls = level_structure(chain, functions[i]);
      const CocliqueCheck check = verify_coclique(chain, ls);
      f.ok = check.ok;
      f.violations = check.violations.size();
      f.lower_level = ls.lower;
      f.upper_level = ls.upper;
    } catch (const ModelError& err) {
      f.ok = false;
      f.error = err.what();
    }
    c.checks.push_back(std::move(f));
  }
  return c;
}

struct BoundsRequest {
  bool up = true;
  bool exact = false;
  std::optional<std::uint64_t> trajectories;
  std::uint64_t seed = 0;
  unsigned threads = 0;
};

inline BoundsSection compute_bounds_section(const Analysis& a, const ProjectedChain& chain,
                                            const LevelFunction& fn, const BoundsRequest& req) {
  BoundsSection b;
  b.coefficients = fn.coefficients;
  b.function = describe_function(fn.coefficients, a.coordinate_names());
  b.direction = req.up ? "up" : "down";
  b.totals = chain.totals();
  const LevelStructure ls = level_structure(chain, fn);
  const LevelRates rates = level_rates(chain, ls);
  b.lower_level = ls.lower;
  b.upper_level = ls.upper;
  for (std::size_t z = 0; z < ls.level_count(); ++z) {
    b.levels.push_back({ls.lower + static_cast<long long>(z), ls.levels[z].size(),
                        RationalField::of(rates.lambda_min[z]),
                        RationalField::of(rates.lambda_max[z]),
                        RationalField::of(rates.gamma_min[z]),
                        RationalField::of(rates.gamma_max[z])});
  }
  const BoundPair pair = req.up ? bound_up(rates) : bound_down(rates);
  b.lower = BoundField::of(pair.lower);
  b.upper = BoundField::of(pair.upper);
  const long long from = req.up ? ls.lower : ls.upper;
  const long long to = req.up ? ls.upper : ls.lower;
  if (req.exact) {
    const LevelPassage p = exact_level_passage(chain.generator(), ls, from, to);
    ExactField ef;
    for (std::size_t i = 0; i < p.sources.size(); ++i) {
      ef.sources.push_back(chain.state(p.sources[i]));
      ef.values.push_back(RationalField::of(p.values[i]));
    }
    ef.min = RationalField::of(p.min);
    ef.max = RationalField::of(p.max);
    b.exact = std::move(ef);
  }
  if (req.trajectories) {
    const std::size_t source = ls.level(from).front();
    const SimEstimate est = estimate_mfpt(SimulationGenerator(chain.generator()), source,
                                          ls.level(to), *req.trajectories, req.seed, req.threads);
    b.simulation = SimulationField{chain.state(source), est.mean, est.half_width_95,
                                   est.trajectories, est.seed};
  }
  b.notes.push_back(
      "the state space contains every state allowed by the totals; unreachable states can only "
      "widen the bounds");
  return b;
}

// ---------------------------------------------------------------------------
// JSON

using Json = nlohmann::ordered_json;

inline Json to_json(const RationalField& r) { return Json{{"exact", r.exact}, {"value", r.value}}; }
inline RationalField rational_from_json(const Json& j) {
  return {j.at("exact").get<std::string>(), j.at("value").get<double>()};
}

inline Json to_json(const BoundField& b) {
  Json j{{"defined", b.value.has_value()}};
  if (b.value) j["value"] = to_json(*b.value);
  if (b.blocked_level) j["blocked_level"] = *b.blocked_level;
  if (!b.reason.empty()) j["reason"] = b.reason;
  return j;
}
inline BoundField bound_from_json(const Json& j) {
  BoundField b;
  if (j.contains("value")) b.value = rational_from_json(j.at("value"));
  if (j.contains("blocked_level")) b.blocked_level = j.at("blocked_level").get<long long>();
  if (j.contains("reason")) b.reason = j.at("reason").get<std::string>();
  return b;
}

inline Json to_json(const BoundsSection& b) {
  Json j{{"coefficients", b.coefficients}, {"function", b.function},
         {"direction", b.direction},       {"totals", b.totals},
         {"lower_level", b.lower_level},   {"upper_level", b.upper_level}};
  Json levels = Json::array();
  for (const auto& row : b.levels) {
    levels.push_back({{"level", row.level},
                      {"states", row.states},
                      {"lambda_min", to_json(row.lambda_min)},
                      {"lambda_max", to_json(row.lambda_max)},
                      {"gamma_min", to_json(row.gamma_min)},
                      {"gamma_max", to_json(row.gamma_max)}});
  }
  j["levels"] = std::move(levels);
  j["lower"] = to_json(b.lower);
  j["upper"] = to_json(b.upper);
  if (b.exact) {
    Json values = Json::array();
    for (const auto& v : b.exact->values) values.push_back(to_json(v));
    j["exact"] = {{"sources", b.exact->sources},
                  {"values", std::move(values)},
                  {"min", to_json(b.exact->min)},
                  {"max", to_json(b.exact->max)}};
  }
  if (b.simulation) {
    j["simulation"] = {{"source", b.simulation->source},
                       {"mean", b.simulation->mean},
                       {"half_width_95", b.simulation->half_width_95},
                       {"trajectories", b.simulation->trajectories},
                       {"seed", b.simulation->seed}};
  }
  j["notes"] = b.notes;
  return j;
}

inline BoundsSection bounds_from_json(const Json& j) {
  BoundsSection b;
  b.coefficients = j.at("coefficients").get<std::vector<long long>>();
  b.function = j.at("function").get<std::string>();
  b.direction = j.at("direction").get<std::string>();
  b.totals = j.at("totals").get<std::vector<long long>>();
  b.lower_level = j.at("lower_level").get<long long>();
  b.upper_level = j.at("upper_level").get<long long>();
  for (const auto& row : j.at("levels")) {
    b.levels.push_back({row.at("level").get<long long>(), row.at("states").get<std::size_t>(),
                        rational_from_json(row.at("lambda_min")),
                        rational_from_json(row.at("lambda_max")),
                        rational_from_json(row.at("gamma_min")),
                        rational_from_json(row.at("gamma_max"))});
  }
  b.lower = bound_from_json(j.at("lower"));
  b.upper = bound_from_json(j.at("upper"));
  if (j.contains("exact")) {
    const auto& e = j.at("exact");
    ExactField ef;
    ef.sources = e.at("sources").get<std::vector<std::vector<long long>>>();
    for (const auto& v : e.at("values")) ef.values.push_back(rational_from_json(v));
    ef.min = rational_from_json(e.at("min"));
    ef.max = rational_from_json(e.at("max"));
    b.exact = std::move(ef);
  }
  if (j.contains("simulation")) {
    const auto& s = j.at("simulation");
    b.simulation = SimulationField{s.at("source").get<std::vector<long long>>(),
                                   s.at("mean").get<double>(), s.at("half_width_95").get<double>(),
                                   s.at("trajectories").get<std::uint64_t>(),
                                   s.at("seed").get<std::uint64_t>()};
  }
  b.notes = j.at("notes").get<std::vector<std::string>>();
  return b;
}

inline Json to_json(const AnalysisReport& r) {
  Json params = Json::array();
  for (const auto& [name, value] : r.network.parameters) {
    params.push_back({{"name", name}, {"value", to_json(value)}});
  }
  Json j{{"schema", r.schema},
         {"network",
          {{"species", r.network.species},
           {"parameters", std::move(params)},
           {"reactions", r.network.reactions},
           {"columns", r.network.columns},
           {"conservation", r.network.conservation}}},
         {"coordinates", r.coordinates}};
  Json comps = Json::array();
  for (const auto& c : r.components) {
    comps.push_back({{"id", c.id},
                     {"species", c.species},
                     {"eliminated", c.eliminated},
                     {"bipartite", c.bipartite},
                     {"degenerate", c.degenerate},
                     {"coclique_b", c.coclique_b},
                     {"coclique_c", c.coclique_c},
                     {"odd_cycle", c.odd_cycle},
                     {"representative_columns", c.representative_columns},
                     {"enumerated", c.enumerated}});
  }
  j["components"] = std::move(comps);
  Json fns = Json::array();
  for (const auto& f : r.functions) {
    fns.push_back({{"coefficients", f.coefficients}, {"text", f.text}, {"signs", f.signs}});
  }
  j["level_functions"] = std::move(fns);
  j["rejected_assignments"] = r.rejected_assignments;
  j["odd_cycle"] = r.odd_cycle;
  j["notes"] = r.notes;
  if (r.chain) {
    Json checks = Json::array();
    for (const auto& c : r.chain->checks) {
      Json cj{{"function", c.function},       {"ok", c.ok},
              {"lower_level", c.lower_level}, {"upper_level", c.upper_level},
              {"violations", c.violations}};
      if (!c.error.empty()) cj["error"] = c.error;
      checks.push_back(std::move(cj));
    }
    j["chain"] = {{"totals", r.chain->totals},
                  {"states", r.chain->states},
                  {"transitions", r.chain->transitions},
                  {"coclique_checks", std::move(checks)}};
  }
  if (r.bounds) j["bounds"] = to_json(*r.bounds);
  return j;
}

inline AnalysisReport report_from_json(const Json& j) {
  AnalysisReport r;
  r.schema = j.at("schema").get<int>();
  if (r.schema != report_schema) {
    throw ParseError(0, 0, "unsupported report schema " + std::to_string(r.schema));
  }
  const auto& n = j.at("network");
  r.network.species = n.at("species").get<std::vector<std::string>>();
  for (const auto& p : n.at("parameters")) {
    r.network.parameters.emplace_back(p.at("name").get<std::string>(),
                                      rational_from_json(p.at("value")));
  }
  r.network.reactions = n.at("reactions").get<std::size_t>();
  r.network.columns = n.at("columns").get<std::vector<std::vector<int>>>();
  r.network.conservation = n.at("conservation").get<std::vector<std::vector<long long>>>();
  r.coordinates = j.at("coordinates").get<std::vector<std::string>>();
  for (const auto& c : j.at("components")) {
    ComponentField f;
    f.id = c.at("id").get<std::size_t>();
    f.species = c.at("species").get<std::vector<std::string>>();
    f.eliminated = c.at("eliminated").get<std::string>();
    f.bipartite = c.at("bipartite").get<bool>();
    f.degenerate = c.at("degenerate").get<bool>();
    f.coclique_b = c.at("coclique_b").get<std::vector<std::string>>();
    f.coclique_c = c.at("coclique_c").get<std::vector<std::string>>();
    f.odd_cycle = c.at("odd_cycle").get<std::vector<std::string>>();
    f.representative_columns = c.at("representative_columns").get<std::size_t>();
    f.enumerated = c.at("enumerated").get<bool>();
    r.components.push_back(std::move(f));
  }
  for (const auto& f : j.at("level_functions")) {
    r.functions.push_back({f.at("coefficients").get<std::vector<long long>>(),
                           f.at("text").get<std::string>(), f.at("signs").get<std::vector<int>>()});
  }
  r.rejected_assignments = j.at("rejected_assignments").get<std::uint64_t>();
  r.odd_cycle = j.at("odd_cycle").get<std::vector<std::string>>();
  r.notes = j.at("notes").get<std::vector<std::string>>();
  if (j.contains("chain")) {
    const auto& c = j.at("chain");
    ChainField cf;
    cf.totals = c.at("totals").get<std::vector<long long>>();
    cf.states = c.at("states").get<std::size_t>();
    cf.transitions = c.at("transitions").get<std::size_t>();
    for (const auto& k : c.at("coclique_checks")) {
      CocliqueField f;
      f.function = k.at("function").get<std::size_t>();
      f.ok = k.at("ok").get<bool>();
      f.lower_level = k.at("lower_level").get<long long>();
      f.upper_level = k.at("upper_level").get<long long>();
      f.violations = k.at("violations").get<std::size_t>();
      if (k.contains("error")) f.error = k.at("error").get<std::string>();
      cf.checks.push_back(std::move(f));
    }
    r.chain = std::move(cf);
  }
  if (j.contains("bounds")) r.bounds = bounds_from_json(j.at("bounds"));
  return r;
}

inline std::string render_json(const AnalysisReport& r) { return to_json(r).dump(2) + "\n"; }

/// Throws ParseError on malformed JSON or a report of another schema.
inline AnalysisReport parse_report(const std::string& text) {
  try {
    return report_from_json(Json::parse(text));
  } catch (const Json::exception& e) {
    throw ParseError(0, 0, std::string("malformed report: ") + e.what());
  }
}

// ---------------------------------------------------------------------------
// Plain text

namespace report_detail {

inline std::string join(const std::vector<std::string>& xs, const char* sep = " ") {
  std::string s;
  for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? sep : "") + xs[i];
  return s;
}

inline std::string bound_text(const BoundField& b) {
  if (b.value) return b.value->exact + " (~" + std::to_string(b.value->value) + ")";
  return "undefined: " + b.reason + " at level " + std::to_string(b.blocked_level.value_or(0));
}

}  // namespace report_detail

inline std::string render_text(const AnalysisReport& r) {
  using report_detail::join;
  std::ostringstream out;
  out << "species: " << join(r.network.species) << "\n";
  out << "reactions: " << r.network.reactions << ", distinct reaction vectors: "
      << r.network.columns.size() << "\n";
  out << "projected coordinates: " << join(r.coordinates) << "\n";
  for (const auto& c : r.components) {
    out << "component " << c.id << ": {" << join(c.species, ", ") << "}, eliminated "
        << c.eliminated;
    if (c.degenerate) {
      out << ", single species\n";
    } else if (c.bipartite) {
      out << ", bipartite {" << join(c.coclique_b, ", ") << "} | {" << join(c.coclique_c, ", ")
          << "}\n";
    } else {
      out << ", not bipartite, odd cycle " << join(c.odd_cycle, " - ") << "\n";
    }
  }
  out << "coclique level functions: " << r.functions.size() << "\n";
  for (std::size_t i = 0; i < r.functions.size(); ++i) {
    out << "  [" << i + 1 << "] L = " << r.functions[i].text << "\n";
  }
  if (!r.odd_cycle.empty()) out << "obstruction: odd cycle " << join(r.odd_cycle, " - ") << "\n";
  for (const auto& n : r.notes) out << "note: " << n << "\n";
  if (r.chain) {
    std::vector<std::string> t;
    for (long long x : r.chain->totals) t.push_back(std::to_string(x));
    out << "chain: totals " << join(t, ",") << ", " << r.chain->states << " states, "
        << r.chain->transitions << " transitions\n";
    for (const auto& c : r.chain->checks) {
      out << "  [" << c.function << "] ";
      if (!c.error.empty()) {
        out << "error: " << c.error << "\n";
      } else {
        out << "levels " << c.lower_level << ".." << c.upper_level << ", coclique check "
            << (c.ok ? "passed" : "FAILED (" + std::to_string(c.violations) + " violations)")
            << "\n";
      }
    }
  }
  if (r.bounds) {
    const auto& b = *r.bounds;
    out << "bounds (" << b.direction << ") for L = " << b.function << ", levels " << b.lower_level
        << ".." << b.upper_level << "\n";
    out << "  level  states  lambda_min  lambda_max  gamma_min  gamma_max\n";
    for (const auto& row : b.levels) {
      out << "  " << row.level << "  " << row.states << "  " << row.lambda_min.exact << "  "
          << row.lambda_max.exact << "  " << row.gamma_min.exact << "  " << row.gamma_max.exact
          << "\n";
    }
    out << "  lower bound: " << report_detail::bound_text(b.lower) << "\n";
    out << "  upper bound: " << report_detail::bound_text(b.upper) << "\n";
    if (b.exact) {
      out << "  exact mean passage time: min " << b.exact->min.exact << ", max "
          << b.exact->max.exact << " over " << b.exact->sources.size() << " source states\n";
    }
    if (b.simulation) {
      out << "  simulation: " << b.simulation->mean << " +/- " << b.simulation->half_width_95
          << " (" << b.simulation->trajectories << " trajectories, seed " << b.simulation->seed
          << ")\n";
    }
    for (const auto& n : b.notes) out << "  note: " << n << "\n";
  }
  return out.str();
}

}  // namespace ccls

#endif  // CCLS_REPORT_HPP
