#ifndef CCLS_LEVEL_STRUCTURE_HPP
#define CCLS_LEVEL_STRUCTURE_HPP

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ccls/error.hpp"
#include "ccls/graph.hpp"
#include "ccls/linalg.hpp"
#include "ccls/network.hpp"

namespace ccls {

/// Choice of the species removed from each component, and the resulting
/// projected coordinates (remaining species in species order).
struct Projection {
  std::vector<std::size_t> eliminated;                    // per component
  std::vector<std::size_t> coordinates;                   // coordinate -> species
  std::vector<std::optional<std::size_t>> coordinate_of;  // species -> coordinate

  std::size_t dimension() const { return coordinates.size(); }

  /// Reaction vector restricted to the projected coordinates.
  std::vector<int> project(const std::vector<int>& v) const {
    std::vector<int> out(coordinates.size());
    for (std::size_t c = 0; c < coordinates.size(); ++c) out[c] = v[coordinates[c]];
    return out;
  }
};

/// By default the highest-index species of each component is eliminated;
/// `overrides` maps a component id to another member species.
inline Projection make_projection(const SpeciesGraph& g,
                                  const std::map<std::size_t, std::size_t>& overrides = {}) {
  Projection p;
  for (std::size_t q = 0; q < g.component_count(); ++q) {
    std::size_t e = g.components[q].back();
    if (auto it = overrides.find(q); it != overrides.end()) {
      if (it->second >= g.vertex_count || g.component_id[it->second] != q) {
        throw ModelError("eliminated species is not in component " + std::to_string(q));
      }
      e = it->second;
    }
    p.eliminated.push_back(e);
  }
  for (const auto& [q, s] : overrides) {
    if (q >= g.component_count()) throw ModelError("no component " + std::to_string(q));
  }
  p.coordinate_of.assign(g.vertex_count, std::nullopt);
  for (std::size_t i = 0; i < g.vertex_count; ++i) {
    if (p.eliminated[g.component_id[i]] == i) continue;
    p.coordinate_of[i] = p.coordinates.size();
    p.coordinates.push_back(i);
  }
  return p;
}

/// Integer level function L(x) = b . x over the projected coordinates.
/// `signs[k]` is L(v_k) in {-1, +1}; `parts[q]` is the restriction of b to
/// component q (zero elsewhere).
struct LevelFunction {
  std::vector<long long> coefficients;
  std::vector<int> signs;
  std::vector<std::vector<long long>> parts;

  long long operator()(const std::vector<long long>& x) const {
    long long s = 0;
    for (std::size_t i = 0; i < coefficients.size(); ++i) s += coefficients[i] * x[i];
    return s;
  }

  LevelFunction negated() const {
    LevelFunction f = *this;
    for (auto& c : f.coefficients) c = -c;
    for (auto& s : f.signs) s = -s;
    for (auto& part : f.parts) {
      for (auto& c : part) c = -c;
    }
    return f;
  }

  /// Sign-normalised copy: the first nonzero coefficient is positive.
  LevelFunction canonical() const {
    for (long long c : coefficients) {
      if (c != 0) return c > 0 ? *this : negated();
    }
    return *this;
  }

  friend bool operator==(const LevelFunction& a, const LevelFunction& b) {
    return a.coefficients == b.coefficients;
  }
};

/// b . v over projected coordinates for every column.
inline std::vector<long long> level_increments(const std::vector<long long>& b,
                                               const StoichiometricMatrix& s,
                                               const Projection& p) {
  std::vector<long long> out;
  for (const auto& col : s.columns) {
    long long acc = 0;
    for (std::size_t c = 0; c < p.dimension(); ++c) acc += b[c] * col[p.coordinates[c]];
    out.push_back(acc);
  }
  return out;
}

/// True iff b . v_k is +1 or -1 for every column.
inline bool is_level_function(const std::vector<long long>& b, const StoichiometricMatrix& s,
                              const Projection& p) {
  for (long long x : level_increments(b, s, p)) {
    if (x != 1 && x != -1) return false;
  }
  return true;
}

inline std::string describe_function(const std::vector<long long>& b,
                                     const std::vector<std::string>& coordinate_names) {
  std::string text;
  for (std::size_t i = 0; i < b.size(); ++i) {
    if (b[i] == 0) continue;
    long long mag = b[i] < 0 ? -b[i] : b[i];
    if (text.empty()) {
      text += b[i] < 0 ? "-" : "";
    } else {
      text += b[i] < 0 ? " - " : " + ";
    }
    if (mag != 1) text += std::to_string(mag) + " ";
    text += coordinate_names[i];
  }
  return text.empty() ? "0" : text;
}

namespace level_detail {

inline LevelFunction from_component_solution(const std::vector<long long>& b, std::size_t q,
                                             std::size_t component_count,
                                             const StoichiometricMatrix& s, const Projection& p) {
  LevelFunction f;
  f.coefficients = b;
  f.parts.assign(component_count, std::vector<long long>(b.size(), 0));
  f.parts[q] = b;
  for (long long x : level_increments(b, s, p)) f.signs.push_back(static_cast<int>(x));
  return f;
}

inline std::vector<std::size_t> component_columns(const SpeciesGraph& g, std::size_t q) {
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < g.edges.size(); ++k) {
    if (g.edge_component(k) == q) out.push_back(k);
  }
  return out;
}

}  // namespace level_detail

/// Solves b . v_k = w_k for the columns of component q, with b supported on
/// the component's projected coordinates. Entries of `w` outside the
/// component are ignored. Returns nullopt when the system is inconsistent.
inline std::optional<LevelFunction> solve_sign_assignment(const StoichiometricMatrix& s,
                                                          const SpeciesGraph& g,
                                                          const Projection& p, std::size_t q,
                                                          const std::vector<int>& w) {
  std::vector<std::size_t> unknowns;  // projected coordinates in component q
  for (std::size_t c = 0; c < p.dimension(); ++c) {
    if (g.component_id[p.coordinates[c]] == q) unknowns.push_back(c);
  }
  if (unknowns.empty()) throw InternalError("component has no projected coordinates");
  linalg::Matrix a;
  linalg::Vector rhs;
  for (std::size_t k : level_detail::component_columns(g, q)) {
    linalg::Vector row;
    for (std::size_t c : unknowns) row.emplace_back(s.columns[k][p.coordinates[c]]);
    a.push_back(std::move(row));
    rhs.emplace_back(w.at(k));
  }
  auto result = linalg::solve(a, rhs, unknowns.size());
  if (result.status == linalg::SolveStatus::Inconsistent) return std::nullopt;
  if (result.status == linalg::SolveStatus::Underdetermined) {
    throw InternalError("level function system is underdetermined");
  }
  std::vector<long long> b(p.dimension(), 0);
  for (std::size_t i = 0; i < unknowns.size(); ++i) {
    if (!is_integer(result.solution[i])) throw InternalError("non-integer solution");
    b[unknowns[i]] = to_int64(result.solution[i]);
  }
  return level_detail::from_component_solution(b, q, g.component_count(), s, p);
}

/// Index of the first basis cycle of component q with w . theta != 0.
inline std::optional<std::size_t> cycle_obstruction(const std::vector<int>& w,
                                                    const std::vector<CycleVector>& basis,
                                                    std::optional<std::size_t> q = std::nullopt) {
  for (std::size_t c = 0; c < basis.size(); ++c) {
    if (q && basis[c].component != *q) continue;
    long long dot = 0;
    for (std::size_t k = 0; k < w.size(); ++k) dot += w[k] * basis[c].coefficients[k];
    if (dot != 0) return c;
  }
  return std::nullopt;
}

struct EnumerationOptions {
  std::size_t max_representatives = 24;
  bool cycle_filter = true;
};

struct ComponentEnumeration {
  std::vector<LevelFunction> functions;
  std::uint64_t assignments = 0;
  std::uint64_t rejected = 0;
  std::uint64_t filtered = 0;  // rejected by the cycle test before solving
};

/// All level functions of component q up to sign: every assignment of signs
/// to the component's representative columns with the first fixed to +1 and
/// reverse partners given the opposite sign. Throws ResourceError when the
/// component has more than `max_representatives` representative columns.
inline ComponentEnumeration enumerate_component_functions(
    const StoichiometricMatrix& s, const SpeciesGraph& g, const Projection& p,
    const ReversiblePairs& rev, const std::vector<CycleVector>& basis, std::size_t q,
    const EnumerationOptions& options = {}) {
  std::vector<std::size_t> reps;
  for (std::size_t k : rev.representatives) {
    if (g.edge_component(k) == q) reps.push_back(k);
  }
  if (reps.empty()) throw InternalError("component has no edges");
  if (reps.size() > options.max_representatives) {
    throw ResourceError("component " + std::to_string(q) + " has " +
                        std::to_string(reps.size()) +
                        " representative reaction vectors, above the enumeration cap of " +
                        std::to_string(options.max_representatives) +
                        "; use the bipartite level function instead");
  }
  ComponentEnumeration out;
  std::set<std::vector<long long>> seen;
  const std::uint64_t count = std::uint64_t{1} << (reps.size() - 1);
  std::vector<int> w(s.size(), 0);
  for (std::uint64_t mask = 0; mask < count; ++mask) {
    ++out.assignments;
    for (std::size_t i = 0; i < reps.size(); ++i) {
      const int sign = (i == 0 || !((mask >> (i - 1)) & 1U)) ? 1 : -1;
      w[reps[i]] = sign;
      if (rev.partner[reps[i]]) w[*rev.partner[reps[i]]] = -sign;
    }
    if (options.cycle_filter && cycle_obstruction(w, basis, q)) {
      ++out.rejected;
      ++out.filtered;
      continue;
    }
    auto f = solve_sign_assignment(s, g, p, q, w);
    if (!f) {
      ++out.rejected;
      continue;
    }
    LevelFunction c = f->canonical();
    if (seen.insert(c.coefficients).second) out.functions.push_back(std::move(c));
  }
  return out;
}

/// L = sum of the counts in the coclique that does not contain the
/// component's eliminated species. Throws ModelError if q is not bipartite.
inline LevelFunction bipartite_level_function(const StoichiometricMatrix& s,
                                              const SpeciesGraph& g, const Projection& p,
                                              std::size_t q) {
  const Bipartition bp = bipartition(g, q);
  if (!bp.bipartite) throw ModelError("component " + std::to_string(q) + " is not bipartite");
  if (bp.degenerate) throw ModelError("component " + std::to_string(q) + " has no edges");
  const std::size_t e = p.eliminated[q];
  const auto& side = std::find(bp.b.begin(), bp.b.end(), e) != bp.b.end() ? bp.c : bp.b;
  std::vector<long long> b(p.dimension(), 0);
  for (std::size_t v : side) b[*p.coordinate_of[v]] = 1;
  LevelFunction f = level_detail::from_component_solution(b, q, g.component_count(), s, p);
  for (std::size_t k : level_detail::component_columns(g, q)) {
    if (f.signs[k] != 1 && f.signs[k] != -1) {
      throw InternalError("coclique indicator is not a level function");
    }
  }
  return f;
}

/// Sums one function per contributing component, over every choice of
/// functions and signs, modulo global negation. Empty if any list is empty.
inline std::vector<LevelFunction> combine_components(
    const std::vector<std::vector<LevelFunction>>& per_component) {
  std::vector<LevelFunction> out;
  if (per_component.empty()) return out;
  for (const auto& list : per_component) {
    if (list.empty()) return out;
  }
  // Mixed-radix counter: component 0 ranges over its functions with their
  // canonical sign, every other component over functions times {+, -}.
  std::set<std::vector<long long>> seen;
  std::vector<std::size_t> digit(per_component.size(), 0);
  auto radix = [&](std::size_t i) {
    return i == 0 ? per_component[0].size() : 2 * per_component[i].size();
  };
  for (;;) {
    LevelFunction f = per_component[0][digit[0]];
    for (std::size_t i = 1; i < per_component.size(); ++i) {
      const LevelFunction& base = per_component[i][digit[i] / 2];
      const LevelFunction g = digit[i] % 2 == 0 ? base : base.negated();
      for (std::size_t c = 0; c < f.coefficients.size(); ++c) f.coefficients[c] += g.coefficients[c];
      for (std::size_t k = 0; k < f.signs.size(); ++k) f.signs[k] += g.signs[k];
      for (std::size_t q = 0; q < f.parts.size(); ++q) {
        for (std::size_t c = 0; c < f.parts[q].size(); ++c) f.parts[q][c] += g.parts[q][c];
      }
    }
    LevelFunction c = f.canonical();
    if (seen.insert(c.coefficients).second) out.push_back(std::move(c));
    std::size_t i = per_component.size();
    while (i > 0) {
      --i;
      if (++digit[i] < radix(i)) break;
      digit[i] = 0;
      if (i == 0) return out;
    }
  }
  return out;
}

struct ComponentSummary {
  std::size_t id = 0;
  Bipartition partition;
  std::size_t representatives = 0;
  bool enumerated = false;  // false when the cap forced the bipartite shortcut
  std::vector<LevelFunction> functions;
};

struct EnumerationReport {
  std::vector<LevelFunction> functions;
  std::vector<ComponentSummary> components;
  std::uint64_t rejected = 0;
  std::optional<std::vector<std::size_t>> obstruction;  // odd cycle when none exist
  std::vector<std::string> notes;
};

/// Every level function of the projected chain. Components above the cap
/// contribute only their bipartite level function, recorded in `notes`.
inline EnumerationReport enumerate_level_functions(const StoichiometricMatrix& s,
                                                   const SpeciesGraph& g, const Projection& p,
                                                   const EnumerationOptions& options = {}) {
  EnumerationReport report;
  const auto rev = reversible_pairs(s);
  const auto basis = wd_cycle_basis(g);
  std::vector<std::vector<LevelFunction>> lists;
  for (std::size_t q = 0; q < g.component_count(); ++q) {
    ComponentSummary summary;
    summary.id = q;
    summary.partition = bipartition(g, q);
    for (std::size_t k : rev.representatives) {
      if (g.edge_component(k) == q) ++summary.representatives;
    }
    if (summary.partition.degenerate) {
      report.components.push_back(std::move(summary));
      continue;
    }
    try {
      auto e = enumerate_component_functions(s, g, p, rev, basis, q, options);
      summary.enumerated = true;
      summary.functions = std::move(e.functions);
      report.rejected += e.rejected;
    } catch (const ResourceError& err) {
      report.notes.push_back(err.what());
      if (summary.partition.bipartite) {
        summary.functions.push_back(bipartite_level_function(s, g, p, q).canonical());
      }
    }
    if (!summary.partition.bipartite && !report.obstruction) {
      report.obstruction = summary.partition.odd_cycle;
    }
    lists.push_back(summary.functions);
    report.components.push_back(std::move(summary));
  }
  report.functions = combine_components(lists);
  return report;
}

}  // namespace ccls

#endif  // CCLS_LEVEL_STRUCTURE_HPP
