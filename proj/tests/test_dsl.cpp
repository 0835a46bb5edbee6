#include <gtest/gtest.h>

#include <random>

#include "test_support.hpp"

using namespace ccls;

namespace {

ParseError parse_error(const std::string& text) {
  try {
    parse_network(text);
  } catch (const ParseError& e) {
    return e;
  }
  ADD_FAILURE() << "no parse error for:\n" << text;
  return ParseError(0, 0, "");
}

}  // namespace

TEST(Dsl, ParsesTheCascade) {
  auto net = parse_network(R"(# conversion cascade
species W Y Z
param alpha = 2
param beta = 0.25
reaction r1: Z -> W @ mass_action(alpha)
reaction r2: W -> Y @ mass_action(beta)   # trailing comment
init Z = 3
)");
  EXPECT_EQ(net.species_count(), 3u);
  ASSERT_EQ(net.reactions().size(), 2u);
  EXPECT_EQ(net.parameter_values().at("beta"), ccls::testing::q(1, 4));
  EXPECT_EQ(net.initial_counts().at(2), 3);
  EXPECT_EQ(net.reactions()[0].reactants, (std::vector<int>{0, 0, 1}));
  EXPECT_EQ(net.reactions()[0].products, (std::vector<int>{1, 0, 0}));
}

TEST(Dsl, LeadingZerosAreDecimal) {
  EXPECT_EQ(*parse_rational("010"), 10);
  EXPECT_EQ(*parse_rational("0.025"), ccls::testing::q(1, 40));
  EXPECT_EQ(*parse_rational("07/010"), ccls::testing::q(7, 10));
  EXPECT_EQ(*parse_rational("1.5e-02"), ccls::testing::q(3, 200));
}

TEST(Dsl, RejectsUnusedSpecies) {
  auto e = parse_error("species A B\n");
  EXPECT_NE(e.message().find("species never used"), std::string::npos);
  EXPECT_EQ(e.line(), 1u);
  EXPECT_EQ(e.column(), 9u);
}

TEST(Dsl, RejectsIdenticalSides) {
  auto e = parse_error("species S1\nreaction r: S1 -> S1 @ mass_action(1)\n");
  EXPECT_NE(e.message().find("reactant equals product"), std::string::npos);
  EXPECT_EQ(e.line(), 2u);
}

TEST(Dsl, ReportsLineAndColumn) {
  auto e = parse_error("species A B\nreaction r: A -> B @ mass_action(k)\n");
  EXPECT_EQ(e.line(), 2u);
  EXPECT_EQ(e.column(), 34u);
  EXPECT_NE(e.message().find("undeclared name 'k'"), std::string::npos);

  e = parse_error("species A B\nreaction r: A -> C @ rate(1)\n");
  EXPECT_NE(e.message().find("undeclared species 'C'"), std::string::npos);
  e = parse_error("species A B\nreaction r: A => B @ rate(1)\n");
  EXPECT_NE(e.message().find("expected '->'"), std::string::npos);
  e = parse_error("species A B\nreaction r: 0 -> B @ rate(1)\n");
  EXPECT_NE(e.message().find("empty reaction side"), std::string::npos);
  e = parse_error("species A B\nreaction r: A -> B @ rate(1 / A)\n");
  EXPECT_NE(e.message().find("species-dependent"), std::string::npos);
  e = parse_error("species A B\nreaction r: A -> B @ mass_action(A)\n");
  EXPECT_NE(e.message().find("must not reference species"), std::string::npos);
  e = parse_error("species A B\nfoo bar\n");
  EXPECT_NE(e.message().find("unknown statement"), std::string::npos);
  e = parse_error("species A B\nparam k = x\n");
  EXPECT_NE(e.message().find("rational"), std::string::npos);
  e = parse_error("species A B\nreaction r: A -> B @ rate(1)\ninit A = -1\n");
  EXPECT_EQ(e.line(), 3u);
}

TEST(Dsl, FoldsConstants) {
  auto net = parse_network("species A B\nreaction r: A -> B @ mass_action(1/2 + 3 * 2)\n");
  const Expr& e = net.reactions()[0].propensity.expr;
  ASSERT_EQ(e.op(), Expr::Op::Literal);
  EXPECT_EQ(e.value(), ccls::testing::q(13, 2));
}

TEST(Dsl, CustomRatesWithFallingFactorial) {
  auto net = parse_network(R"(species A B
param k = 3
reaction r: A -> B @ rate(k * ff(A, 2) / 2 + -B)
)");
  std::vector<long long> x{4, 1};
  EXPECT_EQ(net.propensity(0, x), ccls::testing::q(3 * 12, 2) - 1);
}

TEST(Dsl, RoundTripsEveryBuiltin) {
  for (const auto& name : builtin_names()) {
    auto net = parse_network(builtin_source(name, 3));
    const std::string text = to_dsl(net);
    auto again = parse_network(text);
    EXPECT_TRUE(net == again) << name << "\n" << text;
    EXPECT_EQ(to_dsl(again), text);
  }
}

TEST(Dsl, RoundTripsRandomExpressions) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> pick(0, 9);
  std::function<std::string(int)> gen = [&](int depth) -> std::string {
    const int c = depth > 3 ? pick(rng) % 4 : pick(rng);
    switch (c) {
      case 0: return std::to_string(pick(rng) + 1);
      case 1: return "k";
      case 2: return "A";
      case 3: return "ff(B, " + std::to_string(pick(rng) % 3) + ")";
      case 4: return gen(depth + 1) + " + " + gen(depth + 1);
      case 5: return gen(depth + 1) + " - " + gen(depth + 1);
      case 6: return "(" + gen(depth + 1) + ") * " + gen(depth + 1);
      case 7: return gen(depth + 1) + " / (k + " + std::to_string(pick(rng) + 1) + ")";
      case 8: return "-" + gen(depth + 1);
      default: return "0.5 * (" + gen(depth + 1) + ")";
    }
  };
  for (int i = 0; i < 300; ++i) {
    const std::string src = "species A B\nparam k = 7/3\nreaction r: A -> B @ rate(" + gen(0) + ")\n";
    auto net = parse_network(src);
    auto again = parse_network(to_dsl(net));
    ASSERT_TRUE(net == again) << src << "\n" << to_dsl(net);
    std::vector<long long> x{3, 4};
    EXPECT_EQ(net.reactions()[0].propensity.expr.evaluate(x, net.parameter_values()),
              again.reactions()[0].propensity.expr.evaluate(x, again.parameter_values()));
  }
}
