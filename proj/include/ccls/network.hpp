#ifndef CCLS_NETWORK_HPP
#define CCLS_NETWORK_HPP

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ccls/error.hpp"
#include "ccls/expression.hpp"
#include "ccls/linalg.hpp"
#include "ccls/rational.hpp"

namespace ccls {

/// How a reaction's propensity is computed at a state.
struct Propensity {
  enum class Kind { MassAction, Custom };

  Kind kind = Kind::MassAction;
  /// Rate constant for MassAction (must not reference species); the full
  /// propensity for Custom.
  Expr expr = Expr::literal(1);

  static Propensity mass_action(Expr rate_constant) {
    return {Kind::MassAction, std::move(rate_constant)};
  }
  static Propensity custom(Expr propensity) { return {Kind::Custom, std::move(propensity)}; }

  friend bool operator==(const Propensity& a, const Propensity& b) {
    return a.kind == b.kind && a.expr == b.expr;
  }
};

struct Reaction {
  std::string label;
  std::vector<int> reactants;  // v-
  std::vector<int> products;   // v+
  Propensity propensity;

  std::vector<int> net_change() const {
    std::vector<int> v(products.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = products[i] - reactants[i];
    return v;
  }

  friend bool operator==(const Reaction&, const Reaction&) = default;
};

/// Species, reactions, exact parameter values and optional initial counts.
/// Instances are validated on construction and immutable afterwards.
class ReactionNetwork {
 public:
  using Parameters = std::vector<std::pair<std::string, Rational>>;

  ReactionNetwork(std::vector<std::string> species, std::vector<Reaction> reactions,
                  Parameters parameters = {},
                  std::map<std::size_t, long long> initial_counts = {})
      : species_(std::move(species)),
        reactions_(std::move(reactions)),
        parameters_(std::move(parameters)),
        initial_counts_(std::move(initial_counts)) {
    for (const auto& [name, value] : parameters_) {
      if (!param_values_.emplace(name, value).second) {
        throw ModelError("duplicate parameter '" + name + "'");
      }
    }
    validate();
  }

  std::size_t species_count() const { return species_.size(); }
  const std::vector<std::string>& species() const { return species_; }
  const std::vector<Reaction>& reactions() const { return reactions_; }
  const Parameters& parameters() const { return parameters_; }
  const std::map<std::string, Rational>& parameter_values() const { return param_values_; }
  const std::map<std::size_t, long long>& initial_counts() const { return initial_counts_; }

  std::optional<std::size_t> species_index(std::string_view name) const {
    for (std::size_t i = 0; i < species_.size(); ++i) {
      if (species_[i] == name) return i;
    }
    return std::nullopt;
  }

  /// Copy with some parameter values replaced. Unknown names are an error.
  ReactionNetwork with_parameters(const std::map<std::string, Rational>& overrides) const {
    Parameters params = parameters_;
    for (const auto& [name, value] : overrides) {
      auto it = std::find_if(params.begin(), params.end(),
                             [&](const auto& p) { return p.first == name; });
      if (it == params.end()) throw ModelError("unknown parameter '" + name + "'");
      it->second = value;
    }
    return ReactionNetwork(species_, reactions_, std::move(params), initial_counts_);
  }

  ReactionNetwork with_initial_counts(std::map<std::size_t, long long> counts) const {
    return ReactionNetwork(species_, reactions_, parameters_, std::move(counts));
  }

  /// Propensity of reaction `r` at the full state `counts`. Throws ModelError
  /// on a negative value.
  Rational propensity(std::size_t r, std::span<const long long> counts) const {
    const Reaction& rx = reactions_.at(r);
    Rational value;
    if (rx.propensity.kind == Propensity::Kind::MassAction) {
      value = rx.propensity.expr.evaluate(counts, param_values_);
      for (std::size_t i = 0; i < rx.reactants.size() && value != 0; ++i) {
        const long long x = counts[i];
        for (int j = 0; j < rx.reactants[i]; ++j) value *= Rational(static_cast<long>(x - j));
      }
    } else {
      value = rx.propensity.expr.evaluate(counts, param_values_);
    }
    if (value < 0) {
      throw ModelError("negative propensity for reaction '" + rx.label + "'");
    }
    return value;
  }

  friend bool operator==(const ReactionNetwork& a, const ReactionNetwork& b) {
    return a.species_ == b.species_ && a.reactions_ == b.reactions_ &&
           a.parameters_ == b.parameters_ && a.initial_counts_ == b.initial_counts_;
  }

 private:
  void validate() const {
    const std::size_t d = species_.size();
    if (d == 0) throw ModelError("network declares no species");
    std::set<std::string> names;
    for (const auto& s : species_) {
      if (!names.insert(s).second) throw ModelError("duplicate species '" + s + "'");
      if (param_values_.count(s)) throw ModelError("'" + s + "' is both species and parameter");
    }
    std::vector<bool> used(d, false);
    std::set<std::string> labels;
    for (const auto& rx : reactions_) {
      if (!labels.insert(rx.label).second) {
        throw ModelError("duplicate reaction label '" + rx.label + "'");
      }
      if (rx.reactants.size() != d || rx.products.size() != d) {
        throw ModelError("reaction '" + rx.label + "' has wrong vector length");
      }
      for (std::size_t i = 0; i < d; ++i) {
        if (rx.reactants[i] < 0 || rx.products[i] < 0) {
          throw ModelError("reaction '" + rx.label + "' has a negative coefficient");
        }
        if (rx.reactants[i] > 0 || rx.products[i] > 0) used[i] = true;
      }
      if (rx.reactants == rx.products) {
        throw ModelError("reaction '" + rx.label + "': reactant equals product");
      }
      rx.propensity.expr.visit([&](const Expr& e) {
        if (e.op() == Expr::Op::Species && e.index() >= d) {
          throw ModelError("reaction '" + rx.label + "' references an undeclared species");
        }
        if (e.op() == Expr::Op::Parameter && !param_values_.count(e.name())) {
          throw ModelError("reaction '" + rx.label + "' references undeclared parameter '" +
                           e.name() + "'");
        }
        if (e.op() == Expr::Op::Div && e.child(1).depends_on_species()) {
          throw ModelError("reaction '" + rx.label + "' divides by a species-dependent term");
        }
      });
      if (rx.propensity.kind == Propensity::Kind::MassAction) {
        if (rx.propensity.expr.depends_on_species()) {
          throw ModelError("mass-action constant of '" + rx.label + "' references a species");
        }
        if (rx.propensity.expr.evaluate({}, param_values_) < 0) {
          throw ModelError("mass-action constant of '" + rx.label + "' is negative");
        }
      }
    }
    for (std::size_t i = 0; i < d; ++i) {
      if (!used[i]) throw ModelError("species never used: '" + species_[i] + "'");
    }
    for (const auto& [idx, count] : initial_counts_) {
      if (idx >= d) throw ModelError("initial count for unknown species");
      if (count < 0) throw ModelError("negative initial count for '" + species_[idx] + "'");
    }
  }

  std::vector<std::string> species_;
  std::vector<Reaction> reactions_;
  Parameters parameters_;
  std::map<std::string, Rational> param_values_;
  std::map<std::size_t, long long> initial_counts_;
};

/// Distinct reaction vectors v_k = v+ - v- in order of first appearance, with
/// the reactions contributing to each.
struct StoichiometricMatrix {
  std::size_t species_count = 0;
  std::vector<std::vector<int>> columns;
  std::vector<std::vector<std::size_t>> column_sources;

  std::size_t size() const { return columns.size(); }
  int at(std::size_t species, std::size_t column) const { return columns[column][species]; }

  std::optional<std::size_t> find(const std::vector<int>& v) const {
    for (std::size_t k = 0; k < columns.size(); ++k) {
      if (columns[k] == v) return k;
    }
    return std::nullopt;
  }
};

inline StoichiometricMatrix stoichiometric_matrix(const ReactionNetwork& net) {
  StoichiometricMatrix s;
  s.species_count = net.species_count();
  const auto& rxs = net.reactions();
  for (std::size_t r = 0; r < rxs.size(); ++r) {
    auto v = rxs[r].net_change();
    if (auto k = s.find(v)) {
      s.column_sources[*k].push_back(r);
    } else {
      s.columns.push_back(std::move(v));
      s.column_sources.push_back({r});
    }
  }
  return s;
}

/// Combined rate of column k at the full state: the sum of the propensities
/// of every reaction with that reaction vector, or zero when the jump would
/// leave the non-negative orthant.
inline Rational combined_rate(const ReactionNetwork& net, const StoichiometricMatrix& s,
                              std::size_t k, std::span<const long long> state) {
  const auto& v = s.columns.at(k);
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (state[i] + v[i] < 0) return 0;
  }
  Rational total = 0;
  for (std::size_t r : s.column_sources[k]) total += net.propensity(r, state);
  return total;
}

inline linalg::Matrix transposed_stoichiometry(const StoichiometricMatrix& s) {
  linalg::Matrix st;
  st.reserve(s.size());
  for (const auto& col : s.columns) {
    linalg::Vector row;
    row.reserve(col.size());
    for (int x : col) row.emplace_back(x);
    st.push_back(std::move(row));
  }
  return st;
}

inline std::size_t stoichiometric_rank(const StoichiometricMatrix& s) {
  return linalg::rank(transposed_stoichiometry(s), s.species_count);
}

/// Integer basis of ker(S^T): primitive vectors with positive leading entry.
inline std::vector<std::vector<long long>> conservation_basis(const StoichiometricMatrix& s) {
  std::vector<std::vector<long long>> out;
  for (const auto& v : linalg::nullspace(transposed_stoichiometry(s), s.species_count)) {
    out.push_back(linalg::primitive_integer(v));
  }
  return out;
}

struct InterchangeViolation {
  std::size_t column;
  std::vector<int> vector;
};

/// nullopt when every reaction vector has exactly one +1, one -1 and zeros
/// elsewhere; otherwise the first offending column.
inline std::optional<InterchangeViolation> check_unit_interchange(const StoichiometricMatrix& s) {
  for (std::size_t k = 0; k < s.size(); ++k) {
    int plus = 0;
    int minus = 0;
    bool other = false;
    for (int x : s.columns[k]) {
      if (x == 1) {
        ++plus;
      } else if (x == -1) {
        ++minus;
      } else if (x != 0) {
        other = true;
      }
    }
    if (other || plus != 1 || minus != 1) return InterchangeViolation{k, s.columns[k]};
  }
  return std::nullopt;
}

}  // namespace ccls

#endif  // CCLS_NETWORK_HPP
