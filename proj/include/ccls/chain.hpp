#ifndef CCLS_CHAIN_HPP
#define CCLS_CHAIN_HPP

#include <algorithm>
#include <cstddef>
#include <cstdlib>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "ccls/error.hpp"
#include "ccls/graph.hpp"
#include "ccls/level_structure.hpp"
#include "ccls/network.hpp"
#include "ccls/rational.hpp"

namespace ccls {

inline constexpr std::size_t default_state_cap = 1000000;

/// State cap from CCLS_STATE_CAP when set to a positive integer.
inline std::size_t state_cap_from_environment() {
  if (const char* env = std::getenv("CCLS_STATE_CAP")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return default_state_cap;
}

struct Transition {
  std::size_t target;
  std::size_t column;
  Rational rate;
};

/// Sparse generator: outgoing positive-rate transitions per state.
using Generator = std::vector<std::vector<Transition>>;

struct VectorHash {
  std::size_t operator()(const std::vector<long long>& v) const noexcept {
    std::size_t h = 0xcbf29ce484222325ULL;
    for (long long x : v) {
      h ^= static_cast<std::size_t>(x) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return h;
  }
};

/// Finite projected chain for fixed per-component totals. States are listed
/// in lexicographic order of their projected coordinates.
class ProjectedChain {
 public:
  ProjectedChain(const ReactionNetwork& net, const StoichiometricMatrix& s, const SpeciesGraph& g,
                 Projection projection, std::vector<long long> totals,
                 std::size_t state_cap = default_state_cap)
      : projection_(std::move(projection)),
        totals_(std::move(totals)),
        component_id_(g.component_id) {
    if (totals_.size() != g.component_count()) {
      throw ModelError("expected " + std::to_string(g.component_count()) +
                       " component totals, got " + std::to_string(totals_.size()));
    }
    for (long long t : totals_) {
      if (t < 0) throw ModelError("component totals must be non-negative");
    }
    enumerate(state_cap);
    if (states_.size() <= 1) throw ModelError("projected state space has at most one state");
    for (std::size_t i = 0; i < states_.size(); ++i) index_.emplace(states_[i], i);
    projected_columns_.reserve(s.size());
    for (const auto& col : s.columns) projected_columns_.push_back(projection_.project(col));
    generator_.resize(states_.size());
    exit_rates_.assign(states_.size(), Rational(0));
    for (std::size_t i = 0; i < states_.size(); ++i) {
      const auto full = lift(i);
      for (std::size_t k = 0; k < s.size(); ++k) {
        Rational rate = combined_rate(net, s, k, full);
        if (rate == 0) continue;
        auto next = states_[i];
        for (std::size_t c = 0; c < next.size(); ++c) next[c] += projected_columns_[k][c];
        auto it = index_.find(next);
        if (it == index_.end()) throw InternalError("transition leaves the state space");
        exit_rates_[i] += rate;
        generator_[i].push_back({it->second, k, std::move(rate)});
      }
    }
  }

  std::size_t size() const { return states_.size(); }
  std::size_t dimension() const { return projection_.dimension(); }
  const std::vector<long long>& state(std::size_t i) const { return states_.at(i); }
  const std::vector<std::vector<long long>>& states() const { return states_; }
  const std::vector<long long>& totals() const { return totals_; }
  const Projection& projection() const { return projection_; }
  const Generator& generator() const { return generator_; }
  const Rational& exit_rate(std::size_t i) const { return exit_rates_.at(i); }
  const std::vector<int>& projected_column(std::size_t k) const { return projected_columns_.at(k); }

  std::optional<std::size_t> find(const std::vector<long long>& x) const {
    auto it = index_.find(x);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  /// Full state: eliminated species get total minus the component's sum.
  std::vector<long long> lift(std::size_t i) const {
    const auto& x = states_.at(i);
    std::vector<long long> full(component_id_.size(), 0);
    std::vector<long long> remaining = totals_;
    for (std::size_t c = 0; c < x.size(); ++c) {
      const std::size_t sp = projection_.coordinates[c];
      full[sp] = x[c];
      remaining[component_id_[sp]] -= x[c];
    }
    for (std::size_t q = 0; q < totals_.size(); ++q) full[projection_.eliminated[q]] = remaining[q];
    return full;
  }

  /// Sparse triplet text: a header line, then "source target rate" per
  /// transition with the rate as an exact p/q string.
  std::string triplets() const {
    std::ostringstream out;
    out << "# states " << states_.size() << " transitions";
    std::size_t n = 0;
    for (const auto& row : generator_) n += row.size();
    out << ' ' << n << '\n';
    for (std::size_t i = 0; i < generator_.size(); ++i) {
      for (const auto& t : generator_[i]) out << i << ' ' << t.target << ' ' << t.rate.get_str() << '\n';
    }
    return out.str();
  }

 private:
  void enumerate(std::size_t cap) {
    const std::size_t m = projection_.dimension();
    std::vector<long long> x(m, 0);
    std::vector<long long> budget = totals_;
    std::function<void(std::size_t)> rec = [&](std::size_t c) {
      if (c == m) {
        if (states_.size() >= cap) {
          throw ResourceError("state space exceeds the cap of " + std::to_string(cap) +
                              " states");
        }
        states_.push_back(x);
        return;
      }
      const std::size_t q = component_id_[projection_.coordinates[c]];
      const long long limit = budget[q];
      for (long long v = 0; v <= limit; ++v) {
        x[c] = v;
        budget[q] = limit - v;
        rec(c + 1);
      }
      budget[q] = limit;
      x[c] = 0;
    };
    rec(0);
  }

  Projection projection_;
  std::vector<long long> totals_;
  std::vector<std::size_t> component_id_;
  std::vector<std::vector<long long>> states_;
  std::unordered_map<std::vector<long long>, std::size_t, VectorHash> index_;
  std::vector<std::vector<int>> projected_columns_;
  Generator generator_;
  std::vector<Rational> exit_rates_;
};

/// Level sets of a level function over a chain, for z = lower..upper.
struct LevelStructure {
  LevelFunction function;
  long long lower = 0;
  long long upper = 0;
  std::vector<long long> level_of;                // per state
  std::vector<std::vector<std::size_t>> levels;   // index z - lower

  std::size_t level_count() const { return levels.size(); }
  const std::vector<std::size_t>& level(long long z) const { return levels.at(z - lower); }
};

/// Throws ModelError naming the first empty level when levels are not
/// contiguous.
inline LevelStructure level_structure(const ProjectedChain& chain, const LevelFunction& fn) {
  if (fn.coefficients.size() != chain.dimension()) {
    throw ModelError("level function has " + std::to_string(fn.coefficients.size()) +
                     " coefficients but the chain has " + std::to_string(chain.dimension()) +
                     " projected coordinates");
  }
  LevelStructure ls;
  ls.function = fn;
  ls.level_of.reserve(chain.size());
  for (const auto& x : chain.states()) ls.level_of.push_back(fn(x));
  ls.lower = *std::min_element(ls.level_of.begin(), ls.level_of.end());
  ls.upper = *std::max_element(ls.level_of.begin(), ls.level_of.end());
  ls.levels.assign(static_cast<std::size_t>(ls.upper - ls.lower + 1), {});
  for (std::size_t i = 0; i < chain.size(); ++i) ls.levels[ls.level_of[i] - ls.lower].push_back(i);
  for (std::size_t z = 0; z < ls.levels.size(); ++z) {
    if (ls.levels[z].empty()) {
      throw ModelError("non-contiguous levels: level " +
                       std::to_string(ls.lower + static_cast<long long>(z)) + " is empty");
    }
  }
  return ls;
}

struct CocliqueViolation {
  std::size_t state;
  std::size_t column;
  long long change;
};

struct CocliqueCheck {
  bool ok = true;
  std::vector<CocliqueViolation> violations;
};

/// Every positive-rate transition must change the level by exactly one.
inline CocliqueCheck verify_coclique(const ProjectedChain& chain, const LevelStructure& ls) {
  CocliqueCheck out;
  const auto& gen = chain.generator();
  for (std::size_t i = 0; i < gen.size(); ++i) {
    for (const auto& t : gen[i]) {
      const long long change = ls.level_of[t.target] - ls.level_of[i];
      if (change != 1 && change != -1) {
        out.ok = false;
        out.violations.push_back({i, t.column, change});
      }
    }
  }
  return out;
}

inline std::string format_state(const std::vector<long long>& x) {
  std::string s = "(";
  for (std::size_t i = 0; i < x.size(); ++i) s += (i ? "," : "") + std::to_string(x[i]);
  return s + ")";
}

}  // namespace ccls

#endif  // CCLS_CHAIN_HPP
