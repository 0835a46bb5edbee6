#ifndef CCLS_BOUNDS_HPP
#define CCLS_BOUNDS_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ccls/chain.hpp"
#include "ccls/error.hpp"
#include "ccls/rational.hpp"

namespace ccls {

/// Exact value, or undefined with the level and reason that block it.
struct BoundValue {
  std::optional<Rational> value;
  std::optional<long long> blocked_level;
  std::string reason;

  static BoundValue finite(Rational v) { return {std::move(v), std::nullopt, {}}; }
  static BoundValue undefined(long long level, std::string why) {
    return {std::nullopt, level, std::move(why)};
  }
  bool defined() const { return value.has_value(); }
};

/// Mean first passage time of a birth-death chain on levels 0..n-1 with up
/// rates `lambdas` and down rates `gammas`, from level `from` to `to`.
/// Level 0 has no down move and level n-1 no up move, so gammas[0] and
/// lambdas[n-1] are ignored. Evaluated with running products in exact
/// arithmetic. Undefined when the target cannot be reached.
inline BoundValue birth_death_mfpt(const std::vector<Rational>& lambdas,
                                   const std::vector<Rational>& gammas, std::size_t from,
                                   std::size_t to) {
  const std::size_t n = lambdas.size();
  if (gammas.size() != n) throw InternalError("rate arrays differ in length");
  if (from >= n || to >= n) throw InternalError("level out of range");
  if (from == to) return BoundValue::finite(0);
  Rational total = 0;
  if (from < to) {
    // step[i]: expected time to go from i to i+1.
    std::optional<Rational> step;
    std::optional<long long> blocked;
    for (std::size_t i = 0; i < to; ++i) {
      const bool below_infinite = i > 0 && !step && gammas[i] > 0;
      if (lambdas[i] == 0) {
        blocked = static_cast<long long>(i);
        step.reset();
      } else if (below_infinite) {
        step.reset();
      } else {
        Rational next = 1;
        if (i > 0 && step) next += gammas[i] * *step;
        step = next / lambdas[i];
      }
      if (i >= from) {
        if (!step) return BoundValue::undefined(*blocked, "up rate is zero");
        total += *step;
      }
    }
  } else {
    // step[x]: expected time to go from x to x-1.
    std::optional<Rational> step;
    std::optional<long long> blocked;
    for (std::size_t x = n - 1; x > to; --x) {
      const bool above_infinite = x < n - 1 && !step && lambdas[x] > 0;
      if (gammas[x] == 0) {
        blocked = static_cast<long long>(x);
        step.reset();
      } else if (above_infinite) {
        step.reset();
      } else {
        Rational next = 1;
        if (x < n - 1 && step) next += lambdas[x] * *step;
        step = next / gammas[x];
      }
      if (x <= from) {
        if (!step) return BoundValue::undefined(*blocked, "down rate is zero");
        total += *step;
      }
    }
  }
  return BoundValue::finite(std::move(total));
}

/// Per-level extrema of the total up rate lambda_z(x) (columns raising the
/// level) and down rate gamma_z(x), indexed by z - lower.
struct LevelRates {
  long long lower = 0;
  long long upper = 0;
  std::vector<Rational> lambda_min, lambda_max, gamma_min, gamma_max;
  std::vector<std::size_t> up_columns;    // columns with L(v) = +1
  std::vector<std::size_t> down_columns;  // columns with L(v) = -1
};

namespace bounds_detail {

/// Columns k of `group` whose target x + v_k lies in the state space.
inline std::vector<std::pair<std::size_t, std::size_t>> available_moves(
    const ProjectedChain& chain, std::size_t state, const std::vector<std::size_t>& group) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t k : group) {
    auto next = chain.state(state);
    const auto& v = chain.projected_column(k);
    for (std::size_t c = 0; c < next.size(); ++c) next[c] += v[c];
    if (auto j = chain.find(next)) out.emplace_back(k, *j);
  }
  return out;
}

}  // namespace bounds_detail

/// Throws ModelError when the structure is not a coclique structure, or when
/// some state off the top level has no in-range up move although up columns
/// exist (and symmetrically off the bottom level).
inline LevelRates level_rates(const ProjectedChain& chain, const LevelStructure& ls) {
  auto check = verify_coclique(chain, ls);
  if (!check.ok) {
    const auto& v = check.violations.front();
    throw ModelError("level function is not a coclique level function: column " +
                     std::to_string(v.column) + " changes the level by " +
                     std::to_string(v.change) + " at state " +
                     format_state(chain.state(v.state)));
  }
  LevelRates r;
  r.lower = ls.lower;
  r.upper = ls.upper;
  const std::size_t n_columns = ls.function.signs.size();
  for (std::size_t k = 0; k < n_columns; ++k) {
    (ls.function.signs[k] > 0 ? r.up_columns : r.down_columns).push_back(k);
  }
  const std::size_t levels = ls.level_count();
  r.lambda_min.resize(levels);
  r.lambda_max.resize(levels);
  r.gamma_min.resize(levels);
  r.gamma_max.resize(levels);
  for (std::size_t z = 0; z < levels; ++z) {
    bool first = true;
    for (std::size_t i : ls.levels[z]) {
      if (z + 1 < levels && !r.up_columns.empty() &&
          bounds_detail::available_moves(chain, i, r.up_columns).empty()) {
        throw ModelError("state " + format_state(chain.state(i)) +
                         " below the top level has no level-raising move in the state space");
      }
      if (z > 0 && !r.down_columns.empty() &&
          bounds_detail::available_moves(chain, i, r.down_columns).empty()) {
        throw ModelError("state " + format_state(chain.state(i)) +
                         " above the bottom level has no level-lowering move in the state space");
      }
      Rational up = 0;
      Rational down = 0;
      for (const auto& t : chain.generator()[i]) {
        (ls.level_of[t.target] > ls.level_of[i] ? up : down) += t.rate;
      }
      if (first || up < r.lambda_min[z]) r.lambda_min[z] = up;
      if (first || up > r.lambda_max[z]) r.lambda_max[z] = up;
      if (first || down < r.gamma_min[z]) r.gamma_min[z] = down;
      if (first || down > r.gamma_max[z]) r.gamma_max[z] = down;
      first = false;
    }
  }
  return r;
}

struct BoundPair {
  BoundValue lower;
  BoundValue upper;
};

namespace bounds_detail {

inline BoundValue shift(BoundValue b, long long offset) {
  if (b.blocked_level) *b.blocked_level += offset;
  return b;
}

}  // namespace bounds_detail

/// Bounds on the mean passage time from the bottom level to the top level.
inline BoundPair bound_up(const LevelRates& r) {
  if (r.lower >= r.upper) throw ModelError("level structure has a single level");
  const std::size_t top = r.lambda_min.size() - 1;
  return {bounds_detail::shift(birth_death_mfpt(r.lambda_max, r.gamma_min, 0, top), r.lower),
          bounds_detail::shift(birth_death_mfpt(r.lambda_min, r.gamma_max, 0, top), r.lower)};
}

/// Bounds on the mean passage time from the top level to the bottom level.
inline BoundPair bound_down(const LevelRates& r) {
  if (r.lower >= r.upper) throw ModelError("level structure has a single level");
  const std::size_t top = r.lambda_min.size() - 1;
  return {bounds_detail::shift(birth_death_mfpt(r.lambda_min, r.gamma_max, top, 0), r.lower),
          bounds_detail::shift(birth_death_mfpt(r.lambda_max, r.gamma_min, top, 0), r.lower)};
}

/// The two comparison chains on the projected state space. In `fast_up`
/// each level-z state moves up at total rate lambda_max(z) and down at
/// gamma_min(z); in `slow_up` at lambda_min(z) and gamma_max(z). Each total
/// is split uniformly over the in-range up (or down) moves of the state.
struct ComparisonGenerators {
  Generator fast_up;
  Generator slow_up;
};

inline ComparisonGenerators comparison_generators(const ProjectedChain& chain,
                                                  const LevelStructure& ls, const LevelRates& r) {
  ComparisonGenerators out;
  out.fast_up.resize(chain.size());
  out.slow_up.resize(chain.size());
  for (std::size_t i = 0; i < chain.size(); ++i) {
    const std::size_t z = static_cast<std::size_t>(ls.level_of[i] - ls.lower);
    auto add = [&](std::vector<Transition>& row, const std::vector<std::size_t>& group,
                   const Rational& total) {
      if (total == 0) return;
      auto moves = bounds_detail::available_moves(chain, i, group);
      if (moves.empty()) {
        throw ModelError("state " + format_state(chain.state(i)) +
                         " has a positive level rate but no move in that direction");
      }
      const Rational share = total / Rational(static_cast<long>(moves.size()));
      for (auto [k, j] : moves) row.push_back({j, k, share});
    };
    add(out.fast_up[i], r.up_columns, r.lambda_max[z]);
    add(out.fast_up[i], r.down_columns, r.gamma_min[z]);
    add(out.slow_up[i], r.up_columns, r.lambda_min[z]);
    add(out.slow_up[i], r.down_columns, r.gamma_max[z]);
  }
  return out;
}

}  // namespace ccls

#endif  // CCLS_BOUNDS_HPP
