#ifndef CCLS_ANALYSIS_HPP
#define CCLS_ANALYSIS_HPP

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "ccls/graph.hpp"
#include "ccls/level_structure.hpp"
#include "ccls/network.hpp"

namespace ccls {

/// A network together with its matrix, species graph and projection.
struct Analysis {
  ReactionNetwork network;
  StoichiometricMatrix matrix;
  SpeciesGraph graph;
  Projection projection;

  /// `eliminate` lists species to project out instead of the default
  /// (at most one per component).
  static Analysis build(ReactionNetwork net, const std::vector<std::string>& eliminate = {}) {
    StoichiometricMatrix s = stoichiometric_matrix(net);
    SpeciesGraph g = build_graph(s);
    std::map<std::size_t, std::size_t> overrides;
    for (const auto& name : eliminate) {
      auto idx = net.species_index(name);
      if (!idx) throw ModelError("unknown species '" + name + "'");
      const std::size_t q = g.component_id[*idx];
      if (!overrides.emplace(q, *idx).second) {
        throw ModelError("more than one species to eliminate in the component of '" + name + "'");
      }
    }
    Projection p = make_projection(g, overrides);
    return Analysis{std::move(net), std::move(s), std::move(g), std::move(p)};
  }

  std::vector<std::string> coordinate_names() const {
    std::vector<std::string> out;
    for (std::size_t sp : projection.coordinates) out.push_back(network.species()[sp]);
    return out;
  }

  /// Per-component sums of the network's initial counts.
  std::vector<long long> initial_totals() const {
    std::vector<long long> totals(graph.component_count(), 0);
    for (const auto& [sp, n] : network.initial_counts()) totals[graph.component_id[sp]] += n;
    return totals;
  }

  EnumerationReport enumerate(const EnumerationOptions& options = {}) const {
    return enumerate_level_functions(matrix, graph, projection, options);
  }

  /// Level function with the given coefficients, or ModelError when they do
  /// not define one.
  LevelFunction function_from_coefficients(const std::vector<long long>& b) const {
    if (b.size() != projection.dimension()) {
      throw ModelError("expected " + std::to_string(projection.dimension()) +
                       " coefficients, got " + std::to_string(b.size()));
    }
    if (!is_level_function(b, matrix, projection)) {
      throw ModelError("coefficients do not define a coclique level function");
    }
    LevelFunction f;
    f.coefficients = b;
    for (long long x : level_increments(b, matrix, projection)) f.signs.push_back(static_cast<int>(x));
    f.parts.assign(graph.component_count(), std::vector<long long>(b.size(), 0));
    for (std::size_t c = 0; c < b.size(); ++c) {
      f.parts[graph.component_id[projection.coordinates[c]]][c] = b[c];
    }
    return f;
  }
};

}  // namespace ccls

#endif  // CCLS_ANALYSIS_HPP
