#ifndef CCLS_SIMULATION_HPP
#define CCLS_SIMULATION_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <functional>
#include <span>
#include <thread>
#include <vector>

#include "ccls/bounds.hpp"
#include "ccls/chain.hpp"
#include "ccls/error.hpp"

namespace ccls {

/// SplitMix64. Stream i of seed s starts from mix(mix(s) + i), where mix is
/// the SplitMix64 output function, so nearby seeds do not share streams.
/// Each draw adds the golden-ratio increment to the state and returns
/// mix(state). Uniforms are ((x >> 11) + 1) * 2^-53, which lies in (0, 1].
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t state) : state_(state) {}

  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  static SplitMix64 stream(std::uint64_t seed, std::uint64_t index) {
    return SplitMix64(mix(mix(seed) + index));
  }

  std::uint64_t next() {
    state_ += 0x9e3779b97f4a7c15ULL;
    return mix(state_);
  }
  double uniform() { return static_cast<double>((next() >> 11) + 1) * 0x1.0p-53; }
  /// Inverse-CDF exponential sample.
  double exponential(double rate) { return -std::log(uniform()) / rate; }

 private:
  std::uint64_t state_;
};

/// Floating-point copy of a generator with cumulative rates per state.
class SimulationGenerator {
 public:
  explicit SimulationGenerator(const Generator& gen) : targets_(gen.size()), cumulative_(gen.size()) {
    for (std::size_t i = 0; i < gen.size(); ++i) {
      double acc = 0;
      for (const auto& t : gen[i]) {
        acc += to_double(t.rate);
        targets_[i].push_back(t.target);
        cumulative_[i].push_back(acc);
      }
    }
  }
  std::size_t size() const { return targets_.size(); }
  double exit_rate(std::size_t i) const {
    return cumulative_[i].empty() ? 0.0 : cumulative_[i].back();
  }
  std::size_t jump(std::size_t i, double u) const {
    const auto& cum = cumulative_[i];
    const double x = u * cum.back();
    auto it = std::lower_bound(cum.begin(), cum.end(), x);
    if (it == cum.end()) --it;
    // Skip zero-width entries so a draw never selects a zero-rate move.
    std::size_t k = static_cast<std::size_t>(it - cum.begin());
    while (k > 0 && cum[k] == cum[k - 1]) --k;
    return targets_[i][k];
  }

 private:
  std::vector<std::vector<std::size_t>> targets_;
  std::vector<std::vector<double>> cumulative_;
};

inline constexpr std::uint64_t default_event_cap = 1000000000ULL;

/// One trajectory from `source` until it enters a state with
/// `is_target[state]`; returns the elapsed time. `observer`, when set, is
/// called with every visited state including the first.
inline double ssa_hitting_time(const SimulationGenerator& gen, std::size_t source,
                               const std::vector<bool>& is_target, SplitMix64& rng,
                               std::uint64_t event_cap = default_event_cap,
                               const std::function<void(std::size_t)>& observer = {}) {
  double t = 0;
  std::size_t state = source;
  if (observer) observer(state);
  std::uint64_t events = 0;
  while (!is_target[state]) {
    const double rate = gen.exit_rate(state);
    if (!(rate > 0)) throw ModelError("simulation reached an absorbing non-target state");
    if (++events > event_cap) throw ResourceError("simulation exceeded the event cap");
    t += rng.exponential(rate);
    state = gen.jump(state, rng.uniform());
    if (observer) observer(state);
  }
  return t;
}

/// Deterministic pairwise sum.
inline double pairwise_sum(std::span<const double> xs) {
  if (xs.size() <= 8) {
    double s = 0;
    for (double x : xs) s += x;
    return s;
  }
  const std::size_t half = xs.size() / 2;
  return pairwise_sum(xs.first(half)) + pairwise_sum(xs.subspan(half));
}

struct SimEstimate {
  double mean = 0;
  double half_width_95 = 0;
  std::uint64_t trajectories = 0;
  std::uint64_t seed = 0;

  double standard_error() const { return half_width_95 / 1.96; }
};

/// Mean hitting time over n trajectories; trajectory i uses stream
/// (seed, stream_offset + i). Results do not depend on `threads`.
inline SimEstimate estimate_mfpt(const SimulationGenerator& gen, std::size_t source,
                                 const std::vector<std::size_t>& targets, std::uint64_t n,
                                 std::uint64_t seed, unsigned threads = 0,
                                 std::uint64_t stream_offset = 0,
                                 std::uint64_t event_cap = default_event_cap) {
  if (n < 2) throw ModelError("at least two trajectories are required");
  std::vector<bool> is_target(gen.size(), false);
  for (std::size_t t : targets) is_target.at(t) = true;
  if (threads == 0) threads = std::max(1U, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, n));
  std::vector<double> times(n);
  std::vector<std::exception_ptr> errors(threads);
  auto work = [&](unsigned w) {
    try {
      for (std::uint64_t i = w; i < n; i += threads) {
        SplitMix64 rng = SplitMix64::stream(seed, stream_offset + i);
        times[i] = ssa_hitting_time(gen, source, is_target, rng, event_cap);
      }
    } catch (...) {
      errors[w] = std::current_exception();
    }
  };
  std::vector<std::thread> pool;
  for (unsigned w = 1; w < threads; ++w) pool.emplace_back(work, w);
  work(0);
  for (auto& th : pool) th.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  SimEstimate est;
  est.trajectories = n;
  est.seed = seed;
  est.mean = pairwise_sum(times) / static_cast<double>(n);
  std::vector<double> sq(n);
  for (std::uint64_t i = 0; i < n; ++i) sq[i] = (times[i] - est.mean) * (times[i] - est.mean);
  const double variance = pairwise_sum(sq) / static_cast<double>(n - 1);
  est.half_width_95 = 1.96 * std::sqrt(variance / static_cast<double>(n));
  return est;
}

/// Simulated passage times of the original chain and both comparison chains
/// from one source state. `ordered` holds when faster <= original <= slower
/// within three combined standard errors, where the faster chain is fast_up
/// for upward passage and slow_up for downward passage.
struct SandwichSimulation {
  SimEstimate faster;
  SimEstimate original;
  SimEstimate slower;
  bool ordered = false;
};

inline SandwichSimulation simulate_comparison_sandwich(const ProjectedChain& chain,
                                                       const LevelStructure& ls,
                                                       const ComparisonGenerators& cmp, bool up,
                                                       std::uint64_t n, std::uint64_t seed,
                                                       unsigned threads = 0) {
  const long long from = up ? ls.lower : ls.upper;
  const long long to = up ? ls.upper : ls.lower;
  const std::size_t source = ls.level(from).front();
  const auto& targets = ls.level(to);
  const Generator& faster = up ? cmp.fast_up : cmp.slow_up;
  const Generator& slower = up ? cmp.slow_up : cmp.fast_up;
  SandwichSimulation out;
  // Disjoint stream ranges keep the three estimates independent.
  out.original = estimate_mfpt(SimulationGenerator(chain.generator()), source, targets, n, seed,
                               threads, 0);
  out.faster = estimate_mfpt(SimulationGenerator(faster), source, targets, n, seed, threads, n);
  out.slower =
      estimate_mfpt(SimulationGenerator(slower), source, targets, n, seed, threads, 2 * n);
  auto le = [](const SimEstimate& a, const SimEstimate& b) {
    const double se = std::hypot(a.standard_error(), b.standard_error());
    return a.mean <= b.mean + 3 * se;
  };
  out.ordered = le(out.faster, out.original) && le(out.original, out.slower);
  return out;
}

}  // namespace ccls

#endif  // CCLS_SIMULATION_HPP
