#ifndef CCLS_GRAPH_HPP
#define CCLS_GRAPH_HPP

#include <algorithm>
#include <cstddef>
#include <deque>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "ccls/error.hpp"
#include "ccls/network.hpp"

namespace ccls {

/// Directed edge of the species graph: column k moves one molecule from
/// species `from` to species `to`.
struct GraphEdge {
  std::size_t column;
  std::size_t from;
  std::size_t to;
};

/// Species graph with its weakly connected components. Components are
/// numbered from 0 in order of their smallest vertex.
struct SpeciesGraph {
  std::size_t vertex_count = 0;
  std::vector<GraphEdge> edges;  // edges[k].column == k
  std::vector<std::size_t> component_id;
  std::vector<std::vector<std::size_t>> components;  // sorted members

  std::size_t component_count() const { return components.size(); }
  std::size_t component_size(std::size_t q) const { return components.at(q).size(); }
  std::size_t edge_component(std::size_t k) const { return component_id[edges[k].from]; }

  /// Undirected adjacency: (neighbour, edge index) per vertex.
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> adjacency() const {
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> adj(vertex_count);
    for (std::size_t k = 0; k < edges.size(); ++k) {
      adj[edges[k].from].emplace_back(edges[k].to, k);
      adj[edges[k].to].emplace_back(edges[k].from, k);
    }
    return adj;
  }
};

inline std::string format_vector(const std::vector<int>& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + ")";
}

/// Throws ModelError carrying the offending column when some reaction vector
/// is not a unit interchange.
inline SpeciesGraph build_graph(const StoichiometricMatrix& s) {
  if (auto bad = check_unit_interchange(s)) {
    throw ModelError("reaction vector " + std::to_string(bad->column) + " " +
                     format_vector(bad->vector) +
                     " does not convert one molecule of one species into another");
  }
  SpeciesGraph g;
  g.vertex_count = s.species_count;
  for (std::size_t k = 0; k < s.size(); ++k) {
    GraphEdge e{k, 0, 0};
    for (std::size_t i = 0; i < s.species_count; ++i) {
      if (s.columns[k][i] == -1) e.from = i;
      if (s.columns[k][i] == 1) e.to = i;
    }
    g.edges.push_back(e);
  }
  const auto adj = g.adjacency();
  constexpr std::size_t unset = static_cast<std::size_t>(-1);
  g.component_id.assign(g.vertex_count, unset);
  for (std::size_t start = 0; start < g.vertex_count; ++start) {
    if (g.component_id[start] != unset) continue;
    const std::size_t q = g.components.size();
    g.components.emplace_back();
    std::deque<std::size_t> queue{start};
    g.component_id[start] = q;
    while (!queue.empty()) {
      std::size_t v = queue.front();
      queue.pop_front();
      g.components[q].push_back(v);
      for (auto [w, k] : adj[v]) {
        if (g.component_id[w] == unset) {
          g.component_id[w] = q;
          queue.push_back(w);
        }
      }
    }
    std::sort(g.components[q].begin(), g.components[q].end());
  }
  return g;
}

/// Result of two-colouring one component. When `bipartite`, `b` holds the
/// coclique containing the component's smallest vertex and `c` the other;
/// otherwise `odd_cycle` lists the vertices of a simple odd cycle in order
/// (consecutive entries, and last with first, are adjacent).
struct Bipartition {
  bool bipartite = true;
  bool degenerate = false;  // single vertex, no edges
  std::vector<std::size_t> b;
  std::vector<std::size_t> c;
  std::vector<std::size_t> odd_cycle;
};

inline Bipartition bipartition(const SpeciesGraph& g, std::size_t q) {
  const auto& members = g.components.at(q);
  Bipartition out;
  if (members.size() == 1) {
    out.degenerate = true;
    out.b = members;
    return out;
  }
  const auto adj = g.adjacency();
  constexpr std::size_t unset = static_cast<std::size_t>(-1);
  std::vector<int> colour(g.vertex_count, -1);
  std::vector<std::size_t> parent(g.vertex_count, unset);
  std::vector<std::size_t> depth(g.vertex_count, 0);
  std::deque<std::size_t> queue{members.front()};
  colour[members.front()] = 0;
  while (!queue.empty()) {
    std::size_t v = queue.front();
    queue.pop_front();
    for (auto [w, k] : adj[v]) {
      if (colour[w] < 0) {
        colour[w] = 1 - colour[v];
        parent[w] = v;
        depth[w] = depth[v] + 1;
        queue.push_back(w);
      } else if (colour[w] == colour[v]) {
        // Tree paths to the lowest common ancestor plus edge (v, w) form a
        // simple cycle of length depth(v) + depth(w) - 2 depth(lca) + 1.
        std::vector<std::size_t> up_v{v};
        std::vector<std::size_t> up_w{w};
        std::size_t a = v;
        std::size_t b = w;
        while (depth[a] > depth[b]) up_v.push_back(a = parent[a]);
        while (depth[b] > depth[a]) up_w.push_back(b = parent[b]);
        while (a != b) {
          up_v.push_back(a = parent[a]);
          up_w.push_back(b = parent[b]);
        }
        up_w.pop_back();  // lca already in up_v
        out.bipartite = false;
        out.odd_cycle = up_v;
        out.odd_cycle.insert(out.odd_cycle.end(), up_w.rbegin(), up_w.rend());
        return out;
      }
    }
  }
  for (std::size_t v : members) (colour[v] == 0 ? out.b : out.c).push_back(v);
  return out;
}

/// Columns k < k' with v_k = -v_k', plus a representative set holding the
/// lower column of every pair and every unpaired column.
struct ReversiblePairs {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  std::vector<std::size_t> representatives;
  std::vector<std::optional<std::size_t>> partner;
};

inline ReversiblePairs reversible_pairs(const StoichiometricMatrix& s) {
  ReversiblePairs out;
  out.partner.assign(s.size(), std::nullopt);
  for (std::size_t k = 0; k < s.size(); ++k) {
    std::vector<int> neg(s.columns[k].size());
    std::transform(s.columns[k].begin(), s.columns[k].end(), neg.begin(),
                   [](int x) { return -x; });
    for (std::size_t j = k + 1; j < s.size(); ++j) {
      if (s.columns[j] == neg) {
        out.pairs.emplace_back(k, j);
        out.partner[k] = j;
        out.partner[j] = k;
      }
    }
  }
  for (std::size_t k = 0; k < s.size(); ++k) {
    if (!out.partner[k] || *out.partner[k] > k) out.representatives.push_back(k);
  }
  return out;
}

/// Signed incidence vector of a weakly directed cycle over the columns.
struct CycleVector {
  std::size_t component;
  std::vector<int> coefficients;
};

/// Fundamental cycles of a breadth-first spanning forest: one per non-tree
/// edge, n - d + p in total. Each edge is +1 when traversed along its
/// direction and -1 against it, so S * theta = 0.
inline std::vector<CycleVector> wd_cycle_basis(const SpeciesGraph& g) {
  const auto adj = g.adjacency();
  constexpr std::size_t unset = static_cast<std::size_t>(-1);
  std::vector<std::size_t> parent(g.vertex_count, unset);
  std::vector<std::size_t> parent_edge(g.vertex_count, unset);
  std::vector<std::size_t> depth(g.vertex_count, 0);
  std::vector<bool> seen(g.vertex_count, false);
  std::vector<bool> tree_edge(g.edges.size(), false);
  for (const auto& members : g.components) {
    std::deque<std::size_t> queue{members.front()};
    seen[members.front()] = true;
    while (!queue.empty()) {
      std::size_t v = queue.front();
      queue.pop_front();
      for (auto [w, k] : adj[v]) {
        if (!seen[w]) {
          seen[w] = true;
          parent[w] = v;
          parent_edge[w] = k;
          depth[w] = depth[v] + 1;
          tree_edge[k] = true;
          queue.push_back(w);
        }
      }
    }
  }
  std::vector<CycleVector> basis;
  for (std::size_t k = 0; k < g.edges.size(); ++k) {
    if (tree_edge[k]) continue;
    CycleVector cyc{g.component_id[g.edges[k].from], std::vector<int>(g.edges.size(), 0)};
    cyc.coefficients[k] = 1;
    // Walk from the edge's head back to its tail through the tree.
    std::size_t a = g.edges[k].to;
    std::size_t b = g.edges[k].from;
    std::vector<std::size_t> down;  // vertices on the tail side, climbed upward
    while (depth[a] > depth[b]) {
      const auto& e = g.edges[parent_edge[a]];
      cyc.coefficients[e.column] += (e.from == a) ? 1 : -1;  // a -> parent
      a = parent[a];
    }
    while (depth[b] > depth[a]) {
      down.push_back(b);
      b = parent[b];
    }
    while (a != b) {
      const auto& e = g.edges[parent_edge[a]];
      cyc.coefficients[e.column] += (e.from == a) ? 1 : -1;
      a = parent[a];
      down.push_back(b);
      b = parent[b];
    }
    for (auto it = down.rbegin(); it != down.rend(); ++it) {
      const auto& e = g.edges[parent_edge[*it]];
      cyc.coefficients[e.column] += (e.to == *it) ? 1 : -1;  // parent -> child
    }
    basis.push_back(std::move(cyc));
  }
  return basis;
}

/// Graphviz rendering, vertices labelled by species name and edges by column.
inline std::string to_dot(const SpeciesGraph& g, const std::vector<std::string>& names) {
  std::ostringstream out;
  out << "digraph species {\n";
  for (std::size_t q = 0; q < g.component_count(); ++q) {
    out << "  subgraph cluster_" << q << " {\n";
    for (std::size_t v : g.components[q]) out << "    \"" << names.at(v) << "\";\n";
    out << "  }\n";
  }
  for (const auto& e : g.edges) {
    out << "  \"" << names.at(e.from) << "\" -> \"" << names.at(e.to) << "\" [label=\"e"
        << e.column + 1 << "\"];\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace ccls

#endif  // CCLS_GRAPH_HPP
