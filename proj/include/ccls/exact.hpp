#ifndef CCLS_EXACT_HPP
#define CCLS_EXACT_HPP

#include <algorithm>
#include <cstddef>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ccls/chain.hpp"
#include "ccls/error.hpp"
#include "ccls/rational.hpp"

namespace ccls {

/// Mean first passage times into `targets`, one entry per state of the
/// generator: filled for every state forward-reachable from `sources`
/// (zero on targets), empty elsewhere.
///
/// Throws ModelError when a reachable non-target state is absorbing or
/// cannot reach the target set.
inline std::vector<std::optional<Rational>> exact_mfpt(const Generator& gen,
                                                       const std::vector<std::size_t>& targets,
                                                       const std::vector<std::size_t>& sources) {
  const std::size_t n = gen.size();
  if (targets.empty()) throw ModelError("empty target set");
  std::vector<bool> is_target(n, false);
  for (std::size_t t : targets) is_target.at(t) = true;

  // Forward closure from the sources, not expanding target states.
  std::vector<bool> reached(n, false);
  std::deque<std::size_t> queue;
  for (std::size_t s : sources) {
    if (!reached.at(s)) {
      reached[s] = true;
      queue.push_back(s);
    }
  }
  while (!queue.empty()) {
    std::size_t i = queue.front();
    queue.pop_front();
    if (is_target[i]) continue;
    if (gen[i].empty()) {
      throw ModelError("state " + std::to_string(i) + " is absorbing and not in the target set");
    }
    for (const auto& t : gen[i]) {
      if (!reached[t.target]) {
        reached[t.target] = true;
        queue.push_back(t.target);
      }
    }
  }

  // Every reached state must be able to reach the target set.
  std::vector<std::vector<std::size_t>> reverse(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!reached[i] || is_target[i]) continue;
    for (const auto& t : gen[i]) reverse[t.target].push_back(i);
  }
  std::vector<bool> hits(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    if (reached[i] && is_target[i]) {
      hits[i] = true;
      queue.push_back(i);
    }
  }
  while (!queue.empty()) {
    std::size_t i = queue.front();
    queue.pop_front();
    for (std::size_t j : reverse[i]) {
      if (!hits[j]) {
        hits[j] = true;
        queue.push_back(j);
      }
    }
  }
  std::vector<std::size_t> unknowns;
  std::vector<std::size_t> slot(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!reached[i]) continue;
    if (!hits[i]) {
      throw ModelError("target set is unreachable from state " + std::to_string(i));
    }
    if (!is_target[i]) {
      slot[i] = unknowns.size();
      unknowns.push_back(i);
    }
  }

  // (diag(q) - Q) h = 1 on the unknown states.
  const std::size_t m = unknowns.size();
  std::vector<std::map<std::size_t, Rational>> rows(m);
  std::vector<Rational> rhs(m, Rational(1));
  std::vector<std::set<std::size_t>> column_rows(m);
  for (std::size_t r = 0; r < m; ++r) {
    Rational q = 0;
    for (const auto& t : gen[unknowns[r]]) {
      q += t.rate;
      if (slot[t.target] < m) rows[r][slot[t.target]] -= t.rate;
    }
    rows[r][r] += q;
    for (auto it = rows[r].begin(); it != rows[r].end();) {
      if (it->second == 0) {
        it = rows[r].erase(it);
      } else {
        column_rows[it->first].insert(r);
        ++it;
      }
    }
  }

  // Symmetric elimination, choosing the pivot with the smallest product of
  // row and column counts.
  std::vector<bool> done(m, false);
  std::vector<std::size_t> order;
  order.reserve(m);
  for (std::size_t step = 0; step < m; ++step) {
    std::size_t best = m;
    std::size_t best_score = 0;
    for (std::size_t p = 0; p < m; ++p) {
      if (done[p]) continue;
      std::size_t live_col = 0;
      for (std::size_t r : column_rows[p]) live_col += done[r] ? 0 : 1;
      const std::size_t score = (rows[p].size() - 1) * (live_col - 1);
      if (best == m || score < best_score) {
        best = p;
        best_score = score;
        if (score == 0) break;
      }
    }
    const std::size_t p = best;
    auto pivot_it = rows[p].find(p);
    if (pivot_it == rows[p].end()) throw InternalError("singular passage-time system");
    const Rational pivot = pivot_it->second;
    std::vector<std::size_t> targets_rows(column_rows[p].begin(), column_rows[p].end());
    for (std::size_t r : targets_rows) {
      if (r == p || done[r]) continue;
      auto entry = rows[r].find(p);
      if (entry == rows[r].end()) continue;
      const Rational factor = entry->second / pivot;
      for (const auto& [c, v] : rows[p]) {
        Rational& slot_value = rows[r][c];
        slot_value -= factor * v;
        if (slot_value == 0) {
          rows[r].erase(c);
          column_rows[c].erase(r);
        } else {
          column_rows[c].insert(r);
        }
      }
      rhs[r] -= factor * rhs[p];
    }
    done[p] = true;
    order.push_back(p);
  }

  std::vector<Rational> h(m);
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const std::size_t p = *it;
    Rational acc = rhs[p];
    for (const auto& [c, v] : rows[p]) {
      if (c != p) acc -= v * h[c];
    }
    h[p] = acc / rows[p].at(p);
  }

  std::vector<std::optional<Rational>> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (reached[i] && is_target[i]) out[i] = Rational(0);
  }
  for (std::size_t r = 0; r < m; ++r) out[unknowns[r]] = h[r];
  return out;
}

/// Exact passage times from every state of level `from` into level `to`.
struct LevelPassage {
  std::vector<std::size_t> sources;
  std::vector<Rational> values;  // per source
  Rational min;
  Rational max;
};

inline LevelPassage exact_level_passage(const Generator& gen, const LevelStructure& ls,
                                        long long from, long long to) {
  LevelPassage out;
  out.sources = ls.level(from);
  auto h = exact_mfpt(gen, ls.level(to), out.sources);
  for (std::size_t s : out.sources) out.values.push_back(*h[s]);
  out.min = *std::min_element(out.values.begin(), out.values.end());
  out.max = *std::max_element(out.values.begin(), out.values.end());
  return out;
}

}  // namespace ccls

#endif  // CCLS_EXACT_HPP
