#ifndef CCLS_EXPRESSION_HPP
#define CCLS_EXPRESSION_HPP

#include <cstddef>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "ccls/error.hpp"
#include "ccls/rational.hpp"

namespace ccls {

/// Immutable arithmetic expression over rational literals, named parameters
/// and species counts. Supported operations are +, -, *, division by a
/// species-free operand, unary minus, and the falling factorial ff(a, k).
///
/// Expressions share their subtrees, so copies are cheap.
class Expr {
 public:
  enum class Op { Literal, Parameter, Species, Add, Sub, Mul, Div, Neg, FallingFactorial };

  static Expr literal(Rational value) {
    auto n = std::make_shared<Node>();
    n->op = Op::Literal;
    n->value = std::move(value);
    return Expr(std::move(n));
  }
  static Expr parameter(std::string name) {
    auto n = std::make_shared<Node>();
    n->op = Op::Parameter;
    n->name = std::move(name);
    return Expr(std::move(n));
  }
  static Expr species(std::size_t index) {
    auto n = std::make_shared<Node>();
    n->op = Op::Species;
    n->index = index;
    return Expr(std::move(n));
  }
  static Expr binary(Op op, Expr lhs, Expr rhs) {
    auto n = std::make_shared<Node>();
    n->op = op;
    n->children = {std::move(lhs), std::move(rhs)};
    return Expr(std::move(n));
  }
  static Expr negate(Expr operand) {
    auto n = std::make_shared<Node>();
    n->op = Op::Neg;
    n->children = {std::move(operand)};
    return Expr(std::move(n));
  }
  /// (a)_k = a (a-1) ... (a-k+1); `operand` must be a species or parameter.
  static Expr falling_factorial(Expr operand, std::size_t order) {
    auto n = std::make_shared<Node>();
    n->op = Op::FallingFactorial;
    n->index = order;
    n->children = {std::move(operand)};
    return Expr(std::move(n));
  }

  Op op() const { return node_->op; }
  const Rational& value() const { return node_->value; }
  const std::string& name() const { return node_->name; }
  /// Species index for Op::Species, order for Op::FallingFactorial.
  std::size_t index() const { return node_->index; }
  const Expr& child(std::size_t i) const { return node_->children.at(i); }
  std::size_t arity() const { return node_->children.size(); }

  bool depends_on_species() const {
    if (op() == Op::Species) return true;
    for (const auto& c : node_->children) {
      if (c.depends_on_species()) return true;
    }
    return false;
  }

  template <typename F>
  void visit(F&& f) const {
    f(*this);
    for (const auto& c : node_->children) c.visit(f);
  }

  Rational evaluate(std::span<const long long> counts,
                    const std::map<std::string, Rational>& params) const {
    switch (op()) {
      case Op::Literal:
        return value();
      case Op::Parameter: {
        auto it = params.find(name());
        if (it == params.end()) throw ModelError("undeclared parameter '" + name() + "'");
        return it->second;
      }
      case Op::Species:
        if (index() >= counts.size()) throw InternalError("species index out of range");
        return Rational(BigInt(std::to_string(counts[index()])));
      case Op::Add:
        return child(0).evaluate(counts, params) + child(1).evaluate(counts, params);
      case Op::Sub:
        return child(0).evaluate(counts, params) - child(1).evaluate(counts, params);
      case Op::Mul:
        return child(0).evaluate(counts, params) * child(1).evaluate(counts, params);
      case Op::Div: {
        Rational den = child(1).evaluate(counts, params);
        if (den == 0) throw ModelError("division by zero in rate expression");
        Rational q = child(0).evaluate(counts, params) / den;
        return q;
      }
      case Op::Neg:
        return -child(0).evaluate(counts, params);
      case Op::FallingFactorial: {
        Rational base = child(0).evaluate(counts, params);
        Rational acc = 1;
        for (std::size_t j = 0; j < index(); ++j) acc *= base - static_cast<long>(j);
        return acc;
      }
    }
    throw InternalError("unknown expression node");
  }

  /// Renders the expression so that parsing the text yields an equal tree
  /// (given that the parser folds constant subexpressions).
  std::string to_string(const std::vector<std::string>& species_names) const {
    return render(species_names, 0, false);
  }

  friend bool operator==(const Expr& a, const Expr& b) {
    if (a.node_ == b.node_) return true;
    if (a.op() != b.op()) return false;
    switch (a.op()) {
      case Op::Literal:
        return a.value() == b.value();
      case Op::Parameter:
        return a.name() == b.name();
      case Op::Species:
        return a.index() == b.index();
      case Op::FallingFactorial:
        if (a.index() != b.index()) return false;
        break;
      default:
        break;
    }
    if (a.arity() != b.arity()) return false;
    for (std::size_t i = 0; i < a.arity(); ++i) {
      if (!(a.child(i) == b.child(i))) return false;
    }
    return true;
  }

 private:
  struct Node {
    Op op = Op::Literal;
    Rational value;
    std::string name;
    std::size_t index = 0;
    std::vector<Expr> children;
  };

  explicit Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  static int precedence(Op op) {
    switch (op) {
      case Op::Add:
      case Op::Sub:
        return 1;
      case Op::Mul:
      case Op::Div:
        return 2;
      case Op::Neg:
        return 3;
      default:
        return 4;
    }
  }

  std::string render(const std::vector<std::string>& species_names, int parent_prec,
                     bool right_operand) const {
    switch (op()) {
      case Op::Literal:
        if (is_integer(value()) && value() >= 0) return value().get_str();
        return "(" + value().get_str() + ")";
      case Op::Parameter:
        return name();
      case Op::Species:
        return index() < species_names.size() ? species_names[index()]
                                              : "#" + std::to_string(index());
      case Op::FallingFactorial:
        return "ff(" + child(0).render(species_names, 0, false) + ", " +
               std::to_string(index()) + ")";
      case Op::Neg:
        return "-" + child(0).render(species_names, 3, false);
      default:
        break;
    }
    const int prec = precedence(op());
    const char* symbol = op() == Op::Add   ? " + "
                         : op() == Op::Sub ? " - "
                         : op() == Op::Mul ? " * "
                                           : " / ";
    std::string text = child(0).render(species_names, prec, false) + symbol +
                       child(1).render(species_names, prec, true);
    const bool parens = prec < parent_prec || (prec == parent_prec && right_operand);
    return parens ? "(" + text + ")" : text;
  }

  std::shared_ptr<const Node> node_;
};

}  // namespace ccls

#endif  // CCLS_EXPRESSION_HPP
