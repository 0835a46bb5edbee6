#ifndef CCLS_DSL_HPP
#define CCLS_DSL_HPP

// Line-oriented text format for reaction networks:
//
//   # comment
//   species A B C
//   param k = 3/2
//   reaction r1: 2 A + B -> C + B @ mass_action(k / 2)
//   reaction r2: C -> A @ rate(k * ff(C, 2) + A)
//   init A = 10, B = 1
//
// Names are identifiers. A coefficient of 1 may be omitted; an empty side
// (written `0`) is rejected. Constant subexpressions are folded while
// parsing, so to_dsl output re-parses to an identical network.

#include <cctype>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "ccls/error.hpp"
#include "ccls/expression.hpp"
#include "ccls/network.hpp"
#include "ccls/rational.hpp"

namespace ccls {

namespace dsl_detail {

inline bool is_ident_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}
inline bool is_ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

class LineCursor {
 public:
  LineCursor(std::string_view text, std::size_t line) : text_(text), line_(line) {}

  [[noreturn]] void fail(const std::string& message) const {
    throw ParseError(line_, pos_ + 1, message);
  }
  [[noreturn]] void fail_at(std::size_t pos, const std::string& message) const {
    throw ParseError(line_, pos + 1, message);
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool at_end() {
    skip_space();
    return pos_ >= text_.size();
  }
  char peek() {
    skip_space();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }
  bool accept(std::string_view token) {
    skip_space();
    if (text_.substr(pos_, token.size()) == token) {
      pos_ += token.size();
      return true;
    }
    return false;
  }
  void expect(std::string_view token) {
    if (!accept(token)) fail("expected '" + std::string(token) + "'");
  }
  std::size_t position() {
    skip_space();
    return pos_;
  }

  std::string identifier() {
    skip_space();
    if (pos_ >= text_.size() || !is_ident_start(text_[pos_])) fail("expected a name");
    const std::size_t start = pos_;
    while (pos_ < text_.size() && is_ident_char(text_[pos_])) ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  bool peek_digit() {
    skip_space();
    return pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]));
  }

  /// Unsigned integer or decimal literal (with optional exponent).
  Rational number() {
    skip_space();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (pos_ < text_.size() && text_[pos_] == '.') {
      ++pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      std::size_t p = pos_ + 1;
      if (p < text_.size() && (text_[p] == '+' || text_[p] == '-')) ++p;
      if (p < text_.size() && std::isdigit(static_cast<unsigned char>(text_[p]))) {
        pos_ = p;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
          ++pos_;
        }
      }
    }
    auto value = parse_rational(text_.substr(start, pos_ - start));
    if (pos_ == start || !value) fail_at(start, "expected a number");
    return *value;
  }

  long long integer() {
    const std::size_t start = position();
    Rational r = number();
    if (!is_integer(r) || !r.get_num().fits_slong_p()) fail_at(start, "expected an integer");
    return r.get_num().get_si();
  }

  /// Consumes and returns the remainder of the line.
  std::string_view take_rest() {
    skip_space();
    std::string_view r = text_.substr(pos_);
    pos_ = text_.size();
    return r;
  }

 private:
  std::string_view text_;
  std::size_t line_;
  std::size_t pos_ = 0;
};

class ExprParser {
 public:
  ExprParser(LineCursor& cur, const std::map<std::string, std::size_t>& species,
             const std::map<std::string, Rational>& params)
      : cur_(cur), species_(species), params_(params) {}

  Expr parse() { return additive(); }

 private:
  static Expr fold(Expr e) {
    if (e.arity() == 0 || e.op() == Expr::Op::FallingFactorial) return e;
    for (std::size_t i = 0; i < e.arity(); ++i) {
      if (e.child(i).op() != Expr::Op::Literal) return e;
    }
    return Expr::literal(e.evaluate({}, {}));
  }

  Expr additive() {
    Expr lhs = multiplicative();
    for (;;) {
      if (cur_.accept("+")) {
        lhs = fold(Expr::binary(Expr::Op::Add, lhs, multiplicative()));
      } else if (cur_.peek() == '-') {
        cur_.accept("-");
        lhs = fold(Expr::binary(Expr::Op::Sub, lhs, multiplicative()));
      } else {
        return lhs;
      }
    }
  }

  Expr multiplicative() {
    Expr lhs = unary();
    for (;;) {
      if (cur_.accept("*")) {
        lhs = fold(Expr::binary(Expr::Op::Mul, lhs, unary()));
      } else if (cur_.peek() == '/') {
        const std::size_t at = cur_.position();
        cur_.accept("/");
        Expr rhs = unary();
        if (rhs.depends_on_species()) cur_.fail_at(at, "division by a species-dependent term");
        if (rhs.op() == Expr::Op::Literal && rhs.value() == 0) cur_.fail_at(at, "division by zero");
        lhs = fold(Expr::binary(Expr::Op::Div, lhs, rhs));
      } else {
        return lhs;
      }
    }
  }

  Expr unary() {
    if (cur_.accept("-")) return fold(Expr::negate(unary()));
    return primary();
  }

  Expr primary() {
    if (cur_.accept("(")) {
      Expr inner = additive();
      cur_.expect(")");
      return inner;
    }
    if (cur_.peek_digit()) return Expr::literal(cur_.number());
    const std::size_t at = cur_.position();
    if (!is_ident_start(cur_.peek())) cur_.fail("expected an expression");
    std::string name = cur_.identifier();
    if (name == "ff" && cur_.peek() == '(') {
      cur_.expect("(");
      const std::size_t arg_at = cur_.position();
      std::string arg = cur_.identifier();
      Expr operand = lookup(arg, arg_at);
      cur_.expect(",");
      const std::size_t k_at = cur_.position();
      long long k = cur_.integer();
      if (k < 0) cur_.fail_at(k_at, "falling factorial order must be non-negative");
      cur_.expect(")");
      return Expr::falling_factorial(operand, static_cast<std::size_t>(k));
    }
    return lookup(name, at);
  }

  Expr lookup(const std::string& name, std::size_t at) {
    if (auto it = species_.find(name); it != species_.end()) return Expr::species(it->second);
    if (params_.count(name)) return Expr::parameter(name);
    cur_.fail_at(at, "undeclared name '" + name + "'");
  }

  LineCursor& cur_;
  const std::map<std::string, std::size_t>& species_;
  const std::map<std::string, Rational>& params_;
};

inline std::vector<int> parse_side(LineCursor& cur, const std::map<std::string, std::size_t>& species,
                                   std::size_t d) {
  std::vector<int> counts(d, 0);
  std::set<std::size_t> seen;
  do {
    const std::size_t at = cur.position();
    long long coeff = 1;
    if (cur.peek_digit()) {
      coeff = cur.integer();
      if (coeff == 0) cur.fail_at(at, "empty reaction side ('0') is not allowed");
      if (coeff > 1000000) cur.fail_at(at, "coefficient too large");
    }
    const std::size_t name_at = cur.position();
    std::string name = cur.identifier();
    auto it = species.find(name);
    if (it == species.end()) cur.fail_at(name_at, "undeclared species '" + name + "'");
    if (!seen.insert(it->second).second) {
      cur.fail_at(name_at, "species '" + name + "' listed twice on one side");
    }
    counts[it->second] = static_cast<int>(coeff);
  } while (cur.accept("+"));
  return counts;
}

inline void check_name(LineCursor& cur, std::size_t at, const std::string& name,
                       const std::map<std::string, std::size_t>& species,
                       const std::map<std::string, Rational>& params) {
  static const std::set<std::string> reserved{"species", "param", "reaction", "init",
                                              "ff",      "mass_action", "rate"};
  if (reserved.count(name)) cur.fail_at(at, "'" + name + "' is a reserved word");
  if (species.count(name) || params.count(name)) cur.fail_at(at, "duplicate name '" + name + "'");
}

}  // namespace dsl_detail

/// Parses network source text. Throws ParseError (with line and column) for
/// malformed input, undeclared names, reactions whose sides are equal and
/// declared species that no reaction uses; ModelError for other invalid models.
inline ReactionNetwork parse_network(std::string_view text) {
  using dsl_detail::LineCursor;
  std::vector<std::string> species;
  std::map<std::string, std::size_t> species_index;
  std::map<std::string, std::pair<std::size_t, std::size_t>> species_location;
  ReactionNetwork::Parameters params;
  std::map<std::string, Rational> param_values;
  std::vector<Reaction> reactions;
  std::set<std::string> labels;
  std::map<std::size_t, long long> init;
  bool reactions_started = false;

  std::size_t line_no = 0;
  std::size_t begin = 0;
  while (begin <= text.size()) {
    std::size_t end = text.find('\n', begin);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(begin, end - begin);
    begin = end + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

    LineCursor cur(line, line_no);
    if (cur.at_end()) continue;
    const std::size_t kw_at = cur.position();
    const std::string keyword = cur.identifier();

    if (keyword == "species") {
      if (reactions_started) cur.fail_at(kw_at, "species must be declared before reactions");
      if (cur.at_end()) cur.fail("expected at least one species name");
      while (!cur.at_end()) {
        const std::size_t at = cur.position();
        std::string name = cur.identifier();
        dsl_detail::check_name(cur, at, name, species_index, param_values);
        species_index[name] = species.size();
        species_location[name] = {line_no, at + 1};
        species.push_back(name);
      }
    } else if (keyword == "param") {
      const std::size_t at = cur.position();
      std::string name = cur.identifier();
      dsl_detail::check_name(cur, at, name, species_index, param_values);
      cur.expect("=");
      const std::size_t value_at = cur.position();
      auto value = parse_rational(cur.take_rest());
      if (!value) cur.fail_at(value_at, "expected a rational or decimal literal");
      params.emplace_back(name, *value);
      param_values[name] = *value;
    } else if (keyword == "reaction") {
      reactions_started = true;
      const std::size_t at = cur.position();
      std::string label = cur.identifier();
      if (!labels.insert(label).second) cur.fail_at(at, "duplicate reaction label '" + label + "'");
      cur.expect(":");
      const std::size_t lhs_at = cur.position();
      auto reactants = dsl_detail::parse_side(cur, species_index, species.size());
      cur.expect("->");
      auto products = dsl_detail::parse_side(cur, species_index, species.size());
      if (reactants == products) cur.fail_at(lhs_at, "reactant equals product");
      cur.expect("@");
      const std::size_t kind_at = cur.position();
      std::string kind = cur.identifier();
      if (kind != "mass_action" && kind != "rate") {
        cur.fail_at(kind_at, "expected 'mass_action' or 'rate'");
      }
      cur.expect("(");
      const std::size_t expr_at = cur.position();
      dsl_detail::ExprParser parser(cur, species_index, param_values);
      Expr expr = parser.parse();
      cur.expect(")");
      if (!cur.at_end()) cur.fail("unexpected trailing text");
      Propensity prop;
      if (kind == "mass_action") {
        if (expr.depends_on_species()) {
          cur.fail_at(expr_at, "mass-action constant must not reference species");
        }
        prop = Propensity::mass_action(expr);
      } else {
        prop = Propensity::custom(expr);
      }
      reactions.push_back({label, std::move(reactants), std::move(products), std::move(prop)});
      continue;
    } else if (keyword == "init") {
      do {
        const std::size_t at = cur.position();
        std::string name = cur.identifier();
        auto it = species_index.find(name);
        if (it == species_index.end()) cur.fail_at(at, "undeclared species '" + name + "'");
        cur.expect("=");
        const std::size_t value_at = cur.position();
        long long n = cur.integer();
        if (n < 0) cur.fail_at(value_at, "initial count must be non-negative");
        if (!init.emplace(it->second, n).second) {
          cur.fail_at(at, "duplicate initial count for '" + name + "'");
        }
      } while (cur.accept(","));
    } else {
      cur.fail_at(kw_at, "unknown statement '" + keyword + "'");
    }
    if (!cur.at_end()) cur.fail("unexpected trailing text");
  }

  if (species.empty()) throw ParseError(line_no, 1, "no species declared");
  std::vector<bool> used(species.size(), false);
  for (const auto& rx : reactions) {
    for (std::size_t i = 0; i < species.size(); ++i) {
      if (rx.reactants[i] || rx.products[i]) used[i] = true;
    }
  }
  for (std::size_t i = 0; i < species.size(); ++i) {
    if (!used[i]) {
      const auto [l, c] = species_location[species[i]];
      throw ParseError(l, c, "species never used: '" + species[i] + "'");
    }
  }
  return ReactionNetwork(std::move(species), std::move(reactions), std::move(params),
                         std::move(init));
}

/// Renders a network in the text format accepted by parse_network.
inline std::string to_dsl(const ReactionNetwork& net) {
  std::ostringstream out;
  const auto& names = net.species();
  out << "species";
  for (const auto& s : names) out << ' ' << s;
  out << '\n';
  for (const auto& [name, value] : net.parameters()) {
    out << "param " << name << " = " << value.get_str() << '\n';
  }
  auto side = [&](const std::vector<int>& v) {
    std::string text;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (v[i] == 0) continue;
      if (!text.empty()) text += " + ";
      if (v[i] != 1) text += std::to_string(v[i]) + " ";
      text += names[i];
    }
    return text;
  };
  for (const auto& rx : net.reactions()) {
    out << "reaction " << rx.label << ": " << side(rx.reactants) << " -> " << side(rx.products)
        << " @ "
        << (rx.propensity.kind == Propensity::Kind::MassAction ? "mass_action(" : "rate(")
        << rx.propensity.expr.to_string(names) << ")\n";
  }
  if (!net.initial_counts().empty()) {
    out << "init ";
    bool first = true;
    for (const auto& [idx, n] : net.initial_counts()) {
      out << (first ? "" : ", ") << names[idx] << " = " << n;
      first = false;
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace ccls

#endif  // CCLS_DSL_HPP
