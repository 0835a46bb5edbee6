#include <boost/math/quadrature/exp_sinh.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "test_support.hpp"

using namespace ccls;
using ccls::testing::builtin_analysis;
using ccls::testing::q;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

/// Collects failures; the first few are kept for the report line.
class Check {
 public:
  void require(bool ok, const std::string& what) {
    ++checks_;
    if (ok) return;
    ++failures_;
    if (failures_ <= 3) first_ += (first_.empty() ? "" : "; ") + what;
  }
  std::size_t checks() const { return checks_; }
  Outcome outcome(const std::string& summary) const {
    if (failures_ == 0) return {true, summary + ", " + std::to_string(checks_) + " checks"};
    return {false, std::to_string(failures_) + " of " + std::to_string(checks_) +
                       " checks failed: " + first_};
  }

 private:
  std::size_t checks_ = 0;
  std::size_t failures_ = 0;
  std::string first_;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string str(const Rational& r) { return r.get_str(); }

ProjectedChain chain_of(const Analysis& a, std::vector<long long> totals) {
  return ProjectedChain(a.network, a.matrix, a.graph, a.projection, std::move(totals));
}

std::vector<long long> uniform_totals(const Analysis& a, long long t) {
  return std::vector<long long>(a.graph.component_count(), t);
}

bool has_parameter(const ReactionNetwork& net, const std::string& name) {
  return net.parameter_values().count(name) > 0;
}

std::string format(const std::vector<long long>& b) { return format_state(b); }

// ---------------------------------------------------------------------------

Outcome criterion_enumeration() {
  Check c;
  using Set = std::set<std::vector<long long>>;
  const std::vector<std::pair<std::string, Set>> expected{
      {"cascade", {{1, 2}, {1, 0}}},
      {"chromatin2d", {{1, 1}, {1, -1}}},
      {"biparallel", {{1, 1, 2}, {1, 1, 0}, {1, -1, 0}}},
      {"disconnected", {{1, 1}, {1, -1}}},
      {"crossdep", {{1, 1}, {1, -1}}},
  };
  double slowest = 0;
  for (const auto& [name, want] : expected) {
    auto t0 = std::chrono::steady_clock::now();
    auto a = builtin_analysis(name, 2);
    auto got = ccls::testing::coefficient_set(a.enumerate().functions);
    const double dt = seconds_since(t0);
    slowest = std::max(slowest, dt);
    c.require(got == want, name + " function set differs");
    c.require(dt < 1.0, name + " took " + std::to_string(dt) + " s");
  }
  auto t0 = std::chrono::steady_clock::now();
  auto a = builtin_analysis("chromatin4d", 2);
  auto fns = a.enumerate().functions;
  const double dt = seconds_since(t0);
  slowest = std::max(slowest, dt);
  c.require(dt < 1.0, "chromatin4d took " + std::to_string(dt) + " s");
  const std::vector<long long> target{2, -1, 1, 1};
  c.require(ccls::testing::coefficient_set(fns).count(target) == 1,
            "chromatin4d lacks 2 x1 - x2 + x3 + x4");
  // Sign of L on each listed reaction vector (species DR12 DA DR1 DR2 D).
  const std::vector<std::vector<int>> v{
      {0, 1, 0, 0, -1}, {0, -1, 0, 0, 1}, {0, 0, 1, 0, -1}, {0, 0, -1, 0, 1},
      {0, 0, 0, 1, -1}, {0, 0, 0, -1, 1}, {1, 0, -1, 0, 0}, {-1, 0, 1, 0, 0},
      {1, 0, 0, -1, 0}, {-1, 0, 0, 1, 0}};
  std::set<std::size_t> plus;
  for (std::size_t k = 0; k < v.size(); ++k) {
    long long s = 0;
    for (std::size_t i = 0; i < 4; ++i) s += target[i] * v[k][i];
    c.require(s == 1 || s == -1, "chromatin4d increment not +-1");
    if (s == 1) plus.insert(k + 1);
  }
  c.require(plus == std::set<std::size_t>{2, 3, 5, 7, 9}, "chromatin4d partition differs");
  // Uniqueness: the projected reaction vectors span the 4 coordinates.
  c.require(stoichiometric_rank(a.matrix) == 4, "chromatin4d projected system is not full rank");
  std::ostringstream d;
  d << "6 networks match, slowest " << slowest << " s";
  return c.outcome(d.str());
}

/// Independent two-colouring of the undirected species graph read off the
/// reaction vectors.
bool every_component_bipartite(const StoichiometricMatrix& s) {
  const std::size_t d = s.species_count;
  std::vector<std::vector<std::size_t>> adj(d);
  for (const auto& col : s.columns) {
    std::size_t from = d, to = d;
    for (std::size_t i = 0; i < d; ++i) {
      if (col[i] == -1) from = i;
      if (col[i] == 1) to = i;
    }
    adj[from].push_back(to);
    adj[to].push_back(from);
  }
  std::vector<int> colour(d, -1);
  for (std::size_t r = 0; r < d; ++r) {
    if (colour[r] != -1) continue;
    colour[r] = 0;
    std::vector<std::size_t> stack{r};
    while (!stack.empty()) {
      std::size_t v = stack.back();
      stack.pop_back();
      for (std::size_t u : adj[v]) {
        if (colour[u] == -1) {
          colour[u] = 1 - colour[v];
          stack.push_back(u);
        } else if (colour[u] == colour[v]) {
          return false;
        }
      }
    }
  }
  return true;
}

Outcome criterion_bipartite() {
  Check c;
  auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(20261016);
  std::uniform_int_distribution<std::size_t> species(2, 8);
  std::size_t nonempty = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t d = species(rng);
    std::uniform_int_distribution<std::size_t> reactions(1, std::min<std::size_t>(14, d * 2));
    auto net = ccls::testing::random_interchange_network(rng, d, reactions(rng));
    auto a = Analysis::build(net);
    auto fns = a.enumerate().functions;
    const bool bip = every_component_bipartite(a.matrix);
    c.require(bip == !fns.empty(), "trial " + std::to_string(trial) + " bipartite mismatch");
    c.require(ccls::testing::coefficient_set(fns) ==
                  ccls::testing::brute_force_functions(a.matrix, a.graph, a.projection),
              "trial " + std::to_string(trial) + " brute force mismatch");
    nonempty += !fns.empty();
  }
  const double dt = seconds_since(t0);
  c.require(dt < 30.0, "took " + std::to_string(dt) + " s");
  c.require(nonempty > 20 && nonempty < 180, "random corpus is one-sided");
  std::ostringstream d;
  d << "200 networks (" << nonempty << " with level functions) in " << dt << " s";
  return c.outcome(d.str());
}

struct Parameterization {
  std::string label;
  std::map<std::string, Rational> values;
};

std::vector<Parameterization> parameterizations(const std::string& name) {
  auto base = builtin_analysis(name, 1);
  std::vector<Parameterization> out{{"unit", {}}};
  if (has_parameter(base.network, "eps")) {
    for (long den : {4L, 16L}) out.push_back({"eps=1/" + std::to_string(den), {{"eps", q(1, den)}}});
  }
  std::mt19937_64 rng(std::hash<std::string>{}(name) ^ 7);
  std::uniform_int_distribution<long> num(1, 9);
  Parameterization random{"random", {}};
  for (const auto& [p, v] : base.network.parameters()) {
    if (p != "Dtot") random.values[p] = q(num(rng), num(rng));
  }
  out.push_back(random);
  return out;
}

/// Shared sweep for the sandwich and degenerate-tightness criteria.
struct SweepStats {
  std::size_t compared = 0;
  std::size_t skipped_assumption = 0;
  std::size_t unreachable = 0;
  std::size_t degenerate = 0;
};

void sandwich_sweep(Check& sandwich, Check& tight, SweepStats& st) {
  for (const auto& name : builtin_names()) {
    for (const auto& par : parameterizations(name)) {
      for (long long t = 1; t <= 3; ++t) {
        auto a = builtin_analysis(name, t, par.values);
        auto chain = chain_of(a, uniform_totals(a, t));
        for (const auto& f : a.enumerate().functions) {
          const auto ls = level_structure(chain, f);
          LevelRates r;
          try {
            r = level_rates(chain, ls);
          } catch (const ModelError&) {
            ++st.skipped_assumption;
            continue;
          }
          bool degenerate = true;
          for (std::size_t z = 0; z < r.lambda_min.size(); ++z) {
            degenerate &= r.lambda_min[z] == r.lambda_max[z] && r.gamma_min[z] == r.gamma_max[z];
          }
          for (bool up : {true, false}) {
            const std::string where = name + " " + par.label + " N=" + std::to_string(t) +
                                      " L=" + format(f.coefficients) + (up ? " up" : " down");
            const BoundPair b = up ? bound_up(r) : bound_down(r);
            std::optional<LevelPassage> p;
            try {
              p = up ? exact_level_passage(chain.generator(), ls, ls.lower, ls.upper)
                     : exact_level_passage(chain.generator(), ls, ls.upper, ls.lower);
            } catch (const ModelError&) {
              ++st.unreachable;
              sandwich.require(!b.upper.defined(), where + ": unreachable target, finite upper");
              continue;
            }
            if (b.lower.defined()) {
              sandwich.require(*b.lower.value <= p->min,
                               where + ": lower " + str(*b.lower.value) + " > " + str(p->min));
            }
            if (b.upper.defined()) {
              sandwich.require(p->max <= *b.upper.value,
                               where + ": upper " + str(*b.upper.value) + " < " + str(p->max));
            }
            ++st.compared;
            if (degenerate && b.lower.defined() && b.upper.defined()) {
              ++st.degenerate;
              tight.require(*b.lower.value == *b.upper.value && p->min == *b.lower.value &&
                                p->max == *b.lower.value,
                            where + ": degenerate rates but bounds not tight");
            }
          }
        }
      }
    }
  }
}

Outcome criterion_sandwich(const Check& c, const SweepStats& st, double dt) {
  Check timing = c;
  timing.require(dt < 60.0, "took " + std::to_string(dt) + " s");
  timing.require(st.compared > 0, "nothing compared");
  std::ostringstream d;
  d << st.compared << " passages in exact arithmetic, " << st.unreachable
    << " with unreachable targets, " << st.skipped_assumption
    << " level functions without moves in some direction, " << dt << " s";
  return timing.outcome(d.str());
}

Outcome criterion_tightness(Check c, const SweepStats& st) {
  auto a = builtin_analysis("crossdep", 1);
  auto chain = chain_of(a, {1, 1, 1});
  const auto ls = level_structure(chain, a.function_from_coefficients({1, 1}));
  const auto r = level_rates(chain, ls);
  const auto b = bound_down(r);
  const auto p = exact_level_passage(chain.generator(), ls, ls.upper, ls.lower);
  c.require(b.lower.defined() && *b.lower.value == 3, "lower bound is not 3");
  c.require(b.upper.defined() && *b.upper.value == 3, "upper bound is not 3");
  c.require(p.min == 3 && p.max == 3, "exact value is not 3");
  std::ostringstream d;
  d << "two coupled conversions: lower = upper = exact = 3; " << st.degenerate
    << " further degenerate passages tight";
  return c.outcome(d.str());
}

Outcome criterion_birth_death() {
  Check c;
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<long> num(1, 12);
  std::uniform_int_distribution<std::size_t> len(2, 12);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = len(rng);
    std::vector<Rational> lambda(n, Rational(0)), gamma(n, Rational(0));
    for (std::size_t i = 0; i + 1 < n; ++i) lambda[i] = q(num(rng), num(rng));
    for (std::size_t i = 1; i < n; ++i) gamma[i] = q(num(rng), num(rng));
    Generator g(n);
    for (std::size_t i = 0; i < n; ++i) {
      if (i + 1 < n) g[i].push_back({i + 1, 0, lambda[i]});
      if (i > 0) g[i].push_back({i - 1, 1, gamma[i]});
    }
    const auto up = ccls::testing::dense_first_step(g, {n - 1});
    const auto down = ccls::testing::dense_first_step(g, {0});
    const auto bu = birth_death_mfpt(lambda, gamma, 0, n - 1);
    const auto bd = birth_death_mfpt(lambda, gamma, n - 1, 0);
    c.require(bu.defined() && *bu.value == up[0], "trial " + std::to_string(trial) + " up");
    c.require(bd.defined() && *bd.value == down[n - 1], "trial " + std::to_string(trial) + " down");
  }
  const auto three = birth_death_mfpt({q(1), q(1), q(0)}, {q(0), q(1), q(0)}, 0, 2);
  c.require(three.defined() && *three.value == 3, "unit three-level chain is not 3");
  return c.outcome("100 random chains up to 12 levels match first-step analysis exactly");
}

/// Relative change of successive entries.
double worst_relative_change(const std::vector<double>& xs) {
  double worst = 0;
  for (std::size_t i = 1; i < xs.size(); ++i) {
    worst = std::max(worst, std::abs(xs[i] - xs[i - 1]) / std::abs(xs[i - 1]));
  }
  return worst;
}

Outcome criterion_chromatin2d_scaling() {
  Check c;
  auto t0 = std::chrono::steady_clock::now();
  double worst = 0;
  for (long long dtot : {2LL, 3LL}) {
    std::vector<std::vector<double>> scaled(4);
    for (int k = 6; k <= 12; ++k) {
      const Rational eps = q(1, 1L << k);
      auto a = builtin_analysis("chromatin2d", dtot, {{"eps", eps}});
      auto chain = chain_of(a, {dtot});
      const auto r = level_rates(chain, level_structure(chain, a.function_from_coefficients({1, -1})));
      const auto up = bound_up(r);
      const auto down = bound_down(r);
      const BoundValue* bs[] = {&up.lower, &up.upper, &down.lower, &down.upper};
      for (std::size_t i = 0; i < 4; ++i) {
        c.require(bs[i]->defined(), "undefined bound at k=" + std::to_string(k));
        if (bs[i]->defined()) scaled[i].push_back(to_double(eps * *bs[i]->value));
      }
    }
    const char* names[] = {"up lower", "up upper", "down lower", "down upper"};
    for (std::size_t i = 0; i < 4; ++i) {
      const double w = worst_relative_change(scaled[i]);
      worst = std::max(worst, w);
      c.require(w < 0.10, "Dtot=" + std::to_string(dtot) + " " + names[i] + " changes by " +
                              std::to_string(w));
    }
  }
  const double dt = seconds_since(t0);
  c.require(dt < 10.0, "took " + std::to_string(dt) + " s");
  std::ostringstream d;
  d << "eps * bound over eps = 2^-6..2^-12, largest successive change " << worst * 100 << "%";
  return c.outcome(d.str());
}

Outcome criterion_chromatin4d_scaling() {
  Check c;
  auto t0 = std::chrono::steady_clock::now();
  const long long dtot = 2;
  std::vector<double> lower, exact;
  for (int k = 8; k <= 14; ++k) {
    const Rational eps = q(1, 1L << k);
    auto a = builtin_analysis("chromatin4d", dtot, {{"eps", eps}});
    auto chain = chain_of(a, {dtot});
    const auto ls = level_structure(chain, a.function_from_coefficients({2, -1, 1, 1}));
    const auto b = bound_down(level_rates(chain, ls));
    c.require(b.lower.defined(), "undefined lower bound at k=" + std::to_string(k));
    if (b.lower.defined()) lower.push_back(to_double(eps * eps * *b.lower.value));
    const auto r = chain.find({dtot, 0, 0, 0});
    const auto act = chain.find({0, dtot, 0, 0});
    const auto h = exact_mfpt(chain.generator(), {*act}, {*r});
    exact.push_back(to_double(eps * eps * *h[*r]));
  }
  const double wl = worst_relative_change(lower);
  const double we = worst_relative_change(exact);
  c.require(wl < 0.10, "eps^2 * lower bound changes by " + std::to_string(wl));
  c.require(we < 0.10, "eps^2 * exact changes by " + std::to_string(we));
  const double dt = seconds_since(t0);
  c.require(dt < 60.0, "took " + std::to_string(dt) + " s");
  std::ostringstream d;
  d << "eps = 2^-8..2^-14: eps^2 * lower bound -> " << lower.back() << " (max change "
    << wl * 100 << "%), eps^2 * exact r->a -> " << exact.back() << " (max change " << we * 100
    << "%)";
  return c.outcome(d.str());
}

Outcome criterion_monotonicity() {
  Check bounds, exact;
  const std::vector<Rational> grid{q(1, 2), q(1), q(2)};
  const std::vector<std::string> names{"k1", "k2", "k3", "k4"};
  // Y + Z violates the move assumption (W holds every molecule at level 0),
  // and Y - Z has no upward path; Y + Z + 2 W is the one with defined bounds.
  const std::vector<long long> fn{1, 1, 2};
  struct Values {
    BoundPair bounds;
    LevelPassage exact;
    Rational oracle;  // dense first-step value from the lowest level
  };
  auto evaluate = [&](const std::vector<std::size_t>& idx) {
    std::map<std::string, Rational> p;
    for (std::size_t i = 0; i < 4; ++i) p[names[i]] = grid[idx[i]];
    auto a = builtin_analysis("biparallel", 2, p);
    auto chain = chain_of(a, {2});
    const auto ls = level_structure(chain, a.function_from_coefficients(fn));
    const auto dense = ccls::testing::dense_first_step(chain.generator(), ls.level(ls.upper));
    return Values{bound_up(level_rates(chain, ls)),
                  exact_level_passage(chain.generator(), ls, ls.lower, ls.upper),
                  dense[ls.level(ls.lower).front()]};
  };
  auto label = [&](const std::vector<std::size_t>& idx) {
    std::string out;
    for (std::size_t i = 0; i < 4; ++i) out += (i ? "," : "") + str(grid[idx[i]]);
    return "(" + out + ")";
  };
  std::size_t pairs = 0;
  std::string counterexample;
  std::vector<std::size_t> idx(4, 0);
  for (int point = 0; point < 81; ++point) {
    for (std::size_t i = 0, rest = static_cast<std::size_t>(point); i < 4; ++i, rest /= 3) {
      idx[i] = rest % 3;
    }
    const Values here = evaluate(idx);
    for (std::size_t i = 0; i < 4; ++i) {
      if (idx[i] == 2) continue;
      auto next_idx = idx;
      ++next_idx[i];
      const Values next = evaluate(next_idx);
      const std::string where = "k=" + label(idx) + " raising " + names[i];
      const bool defined = here.bounds.lower.defined() && here.bounds.upper.defined() &&
                           next.bounds.lower.defined() && next.bounds.upper.defined();
      bounds.require(defined, where + ": undefined bound");
      if (!defined) continue;
      bounds.require(*next.bounds.lower.value <= *here.bounds.lower.value, where + ": lower grew");
      bounds.require(*next.bounds.upper.value <= *here.bounds.upper.value, where + ": upper grew");
      const bool ok = next.exact.min <= here.exact.min && next.exact.max <= here.exact.max;
      exact.require(ok, where + ": exact " + str(here.exact.max) + " -> " + str(next.exact.max));
      if (!ok && counterexample.empty()) {
        counterexample = where + " takes the exact time from " + str(here.exact.max) + " to " +
                         str(next.exact.max) + " (dense first-step oracle: " + str(here.oracle) +
                         " -> " + str(next.oracle) + ")";
      }
      ++pairs;
    }
  }
  const Outcome b = bounds.outcome("bounds non-increasing");
  const Outcome e = exact.outcome("exact non-increasing");
  std::ostringstream d;
  d << pairs << " single-constant increases, upward passage, L = Y + Z + 2 W. lower/upper bounds: "
    << b.detail << ". exact: " << e.detail;
  if (!counterexample.empty()) d << ". e.g. " << counterexample;
  return {b.pass && e.pass, d.str()};
}

/// E[max of n iid Exp(alpha) + Exp(beta)] by quadrature of 1 - F^n.
double hypoexponential_max_mean(double alpha, double beta, int n) {
  auto cdf = [&](double x) {
    if (alpha == beta) return 1 - std::exp(-alpha * x) * (1 + alpha * x);
    return 1 - (beta * std::exp(-alpha * x) - alpha * std::exp(-beta * x)) / (beta - alpha);
  };
  boost::math::quadrature::exp_sinh<double> integrator;
  return integrator.integrate([&](double x) { return 1 - std::pow(cdf(x), n); }, 0.0,
                              std::numeric_limits<double>::infinity(), 1e-12);
}

Outcome criterion_cascade_quadrature() {
  Check c;
  double worst = 0;
  for (long long n = 1; n <= 3; ++n) {
    for (long alpha : {1L, 2L}) {
      for (long beta : {1L, 2L}) {
        auto a = builtin_analysis("cascade", n, {{"alpha", q(alpha)}, {"beta", q(beta)}});
        auto chain = chain_of(a, {n});
        const auto src = chain.find({0, 0});
        const auto dst = chain.find({0, n});
        const auto h = exact_mfpt(chain.generator(), {*dst}, {*src});
        const double exact = to_double(*h[*src]);
        const double quad =
            hypoexponential_max_mean(static_cast<double>(alpha), static_cast<double>(beta),
                                     static_cast<int>(n));
        const double rel = std::abs(exact - quad) / quad;
        worst = std::max(worst, rel);
        c.require(rel < 1e-6, "N=" + std::to_string(n) + " alpha=" + std::to_string(alpha) +
                                  " beta=" + std::to_string(beta) + ": " + str(*h[*src]) +
                                  " vs " + std::to_string(quad));
      }
    }
  }
  std::ostringstream d;
  d << "12 cases, largest relative difference " << worst;
  return c.outcome(d.str());
}

Outcome criterion_simulation() {
  Check c;
  auto t0 = std::chrono::steady_clock::now();
  struct Case {
    std::string label;
    Analysis analysis;
    std::vector<long long> totals;
    std::vector<long long> fn;
    bool up;
  };
  std::vector<Case> cases;
  cases.push_back({"two coupled conversions", builtin_analysis("crossdep", 1), {1, 1, 1}, {1, 1},
                   false});
  cases.push_back({"chromatin2d Dtot=2", builtin_analysis("chromatin2d", 2), {2}, {1, -1}, true});
  std::ostringstream d;
  for (const auto& k : cases) {
    auto chain = chain_of(k.analysis, k.totals);
    const auto ls = level_structure(chain, k.analysis.function_from_coefficients(k.fn));
    const auto& from = ls.level(k.up ? ls.lower : ls.upper);
    const auto& to = ls.level(k.up ? ls.upper : ls.lower);
    const std::size_t source = from.front();
    const double exact = to_double(*exact_mfpt(chain.generator(), to, {source})[source]);
    const SimulationGenerator sim(chain.generator());
    auto covered = [&](std::uint64_t seed) {
      const auto est = estimate_mfpt(sim, source, to, 100000, seed);
      return std::abs(est.mean - exact) <= est.half_width_95;
    };
    int hits = 0;
    for (std::uint64_t seed = 1001; seed <= 1020; ++seed) hits += covered(seed);
    c.require(hits >= 18, k.label + ": " + std::to_string(hits) + " of 20 within half-width");
    // Coverage of the interval over a larger block of seeds.
    int wide = 0;
    for (std::uint64_t seed = 1; seed <= 400; ++seed) wide += covered(seed);
    c.require(wide >= 368 && wide <= 392,
              k.label + ": coverage " + std::to_string(wide) + " of 400");
    // Conservation along trajectories.
    const auto conserved = conservation_basis(k.analysis.matrix);
    std::vector<bool> is_target(chain.size(), false);
    for (auto t : to) is_target[t] = true;
    auto dot = [](const std::vector<long long>& m, const std::vector<long long>& x) {
      long long s = 0;
      for (std::size_t i = 0; i < m.size(); ++i) s += m[i] * x[i];
      return s;
    };
    const auto x0 = chain.lift(source);
    bool kept = true;
    for (std::uint64_t i = 0; i < 2000; ++i) {
      auto rng = SplitMix64::stream(99, i);
      ssa_hitting_time(sim, source, is_target, rng, default_event_cap, [&](std::size_t s) {
        const auto x = chain.lift(s);
        for (const auto& m : conserved) kept &= dot(m, x) == dot(m, x0);
        for (long long v : x) kept &= v >= 0;
      });
    }
    c.require(kept, k.label + ": a trajectory broke a conservation law");
    d << k.label << " exact " << exact << ": " << hits << "/20, coverage " << wide << "/400; ";
  }
  const double dt = seconds_since(t0);
  c.require(dt < 120.0, "took " + std::to_string(dt) + " s");
  d << dt << " s";
  return c.outcome(d.str());
}

Outcome criterion_coclique() {
  Check c;
  std::size_t transitions = 0;
  for (const auto& name : builtin_names()) {
    for (long long t = 1; t <= 3; ++t) {
      auto a = builtin_analysis(name, t);
      auto chain = chain_of(a, uniform_totals(a, t));
      for (const auto& f : a.enumerate().functions) {
        auto level = [&](std::size_t i) {
          long long z = 0;
          const auto x = chain.state(i);
          for (std::size_t j = 0; j < x.size(); ++j) z += f.coefficients[j] * x[j];
          return z;
        };
        for (std::size_t i = 0; i < chain.size(); ++i) {
          for (const auto& tr : chain.generator()[i]) {
            if (tr.rate <= 0) continue;
            ++transitions;
            const long long step = level(tr.target) - level(i);
            c.require(step == 1 || step == -1, name + " L=" + format(f.coefficients) +
                                                   " step " + std::to_string(step));
          }
        }
        c.require(verify_coclique(chain, level_structure(chain, f)).ok,
                  name + " L=" + format(f.coefficients) + ": library check disagrees");
      }
    }
  }
  std::ostringstream d;
  d << transitions << " positive-rate transitions step by exactly one level";
  return c.outcome(d.str());
}

}  // namespace

int main() {
  struct Row {
    int id;
    std::string title;
    Outcome outcome;
  };
  std::vector<Row> rows;
  auto run = [&](int id, const std::string& title, const std::function<Outcome()>& f) {
    Outcome o;
    try {
      o = f();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::printf("[%s] %2d %s: %s\n", o.pass ? "PASS" : "FAIL", id, title.c_str(),
                o.detail.c_str());
    std::fflush(stdout);
    rows.push_back({id, title, o});
  };

  run(1, "level-function enumeration", criterion_enumeration);
  run(2, "bipartite characterization", criterion_bipartite);
  Check sandwich, tight;
  SweepStats stats;
  double sweep_seconds = 0;
  run(3, "sandwich property", [&] {
    auto t0 = std::chrono::steady_clock::now();
    sandwich_sweep(sandwich, tight, stats);
    sweep_seconds = seconds_since(t0);
    return criterion_sandwich(sandwich, stats, sweep_seconds);
  });
  run(4, "degenerate tightness", [&] { return criterion_tightness(tight, stats); });
  run(5, "birth-death closed form", criterion_birth_death);
  run(6, "chromatin 2D eps scaling", criterion_chromatin2d_scaling);
  run(7, "chromatin 4D eps scaling", criterion_chromatin4d_scaling);
  run(8, "bi-parallel monotonicity", criterion_monotonicity);
  run(9, "cascade quadrature", criterion_cascade_quadrature);
  run(10, "simulation consistency", criterion_simulation);
  run(11, "coclique invariant", criterion_coclique);

  int failed = 0;
  for (const auto& r : rows) failed += !r.outcome.pass;
  std::printf("%d of %zu criteria passed\n", static_cast<int>(rows.size()) - failed, rows.size());
  return failed == 0 ? 0 : 1;
}
