// Copyright 2026 The hude Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <random>
#include <string>
#include <vector>

#include "doctest.h"
#include "hude/errors.hpp"
#include "hude/expr.hpp"

using namespace hude;

namespace {

const std::vector<std::string> kParams = {"sig1", "sig2"};

double eval_at(const std::string& src, int order, std::vector<double> state,
               double t = 0.0, std::vector<double> params = {0.0, 0.0}) {
  const ExprAst ast = parse_expr(src, order, kParams);
  return eval_expr(ast, {t, state, params});
}

}  // namespace

TEST_CASE("drift of the second example parses into a three-term sum") {
  const ExprAst ast = parse_expr("2*x1 + 3*x0 + exp(-t)", 2, kParams);
  REQUIRE(ast.kind == NodeKind::kBinary);
  CHECK(ast.op == BinaryOp::kAdd);
  const ExprAst& lhs = ast.children[0];
  REQUIRE(lhs.kind == NodeKind::kBinary);
  CHECK(lhs.op == BinaryOp::kAdd);
  CHECK(lhs.children[0].op == BinaryOp::kMul);
  CHECK(lhs.children[1].op == BinaryOp::kMul);
  CHECK(ast.children[1].kind == NodeKind::kCall);
  CHECK(ast.children[1].func == Function::kExp);
}

TEST_CASE("a lone state variable is a single node") {
  const ExprAst ast = parse_expr("x0", 1, kParams);
  CHECK(ast.kind == NodeKind::kVariable);
  CHECK(ast.var == VariableKind::kState);
  CHECK(ast.index == 0);
  CHECK(ast.children.empty());
}

TEST_CASE("parse errors carry their position") {
  try {
    parse_expr("x0 + sig1*", 1, kParams);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.position() == 10);
  }
  CHECK_THROWS_AS(parse_expr("x2", 2, kParams), ParseError);
  CHECK_THROWS_AS(parse_expr("beta*x0", 1, kParams), ParseError);
  CHECK_THROWS_AS(parse_expr("exp(x0, x0)", 1, kParams), ParseError);
  CHECK_THROWS_AS(parse_expr("exp", 1, kParams), ParseError);
  CHECK_THROWS_AS(parse_expr("sqrt(x0)", 1, kParams), ParseError);
  CHECK_THROWS_AS(parse_expr("(x0", 1, kParams), ParseError);
  CHECK_THROWS_AS(parse_expr("x0 x0", 1, kParams), ParseError);
  CHECK_THROWS_AS(parse_expr("   ", 1, kParams), ParseError);
  CHECK_THROWS_AS(parse_expr("x0", 0, kParams), PreconditionError);
}

TEST_CASE("precedence and associativity") {
  CHECK(eval_at("1 + 2*3", 1, {0}) == 7.0);
  CHECK(eval_at("8/4/2", 1, {0}) == 1.0);
  CHECK(eval_at("2^3^2", 1, {0}) == 512.0);
  CHECK(eval_at("-2^2", 1, {0}) == -4.0);
  CHECK(eval_at("2^-1", 1, {0}) == 0.5);
  CHECK(eval_at("-x0*3", 1, {2}) == -6.0);
  CHECK(eval_at("10 - 4 - 3", 1, {0}) == 3.0);
  CHECK(eval_at("1.5e2 + .5", 1, {0}) == 150.5);
}

TEST_CASE("evaluation examples") {
  CHECK(eval_at("2*x1+3*x0+exp(-t)", 2, {0, 0}, 0.0) == 1.0);
  // -1.43143 * 2 by hand.
  CHECK(eval_at("abs(-1.43143*x1)", 2, {0, 2}) == doctest::Approx(2.86286).epsilon(1e-15));
  CHECK(eval_at("sig2*(10*x0 - x1)", 2, {1, 0.5}, 0.0, {0, 0.3}) ==
        doctest::Approx(2.85));
  CHECK(eval_at("ln(exp(2)) + sin(0) + cos(0)", 1, {0}) == doctest::Approx(3.0));
}

TEST_CASE("domain errors and missing bindings") {
  CHECK_THROWS_AS(eval_at("ln(x0)", 1, {0.0}), EvalError);
  CHECK_THROWS_AS(eval_at("ln(x0)", 1, {-1.0}), EvalError);
  CHECK_THROWS_AS(eval_at("1/x0", 1, {0.0}), EvalError);
  const ExprAst ast = parse_expr("x1 + sig2", 2, kParams);
  const std::vector<double> short_state = {1.0};
  const std::vector<double> params = {1.0, 2.0};
  CHECK_THROWS_AS(eval_expr(ast, {0.0, short_state, params}), EvalError);
  const std::vector<double> state = {1.0, 2.0};
  const std::vector<double> short_params = {1.0};
  CHECK_THROWS_AS(eval_expr(ast, {0.0, state, short_params}), EvalError);
  const CompiledExpr code(ast);
  CHECK_THROWS_AS(code(EvalEnv{0.0, state, short_params}), EvalError);
  const CompiledExpr log_code(parse_expr("ln(x0)", 1, kParams));
  const std::vector<double> zero = {0.0};
  CHECK_THROWS_AS(log_code(EvalEnv{0.0, zero, params}), EvalError);
}

namespace {

// Random well-formed expression text over x0, x1, t and sig1.
std::string random_expr(std::mt19937& rng, int depth) {
  std::uniform_int_distribution<int> pick(0, 9);
  const int c = depth <= 0 ? pick(rng) % 4 : pick(rng);
  switch (c) {
    case 0: return "x0";
    case 1: return "x1";
    case 2: return "t";
    case 3: {
      std::uniform_real_distribution<double> v(0.0, 10.0);
      return std::to_string(v(rng));
    }
    case 4: return "(" + random_expr(rng, depth - 1) + " + " + random_expr(rng, depth - 1) + ")";
    case 5: return random_expr(rng, depth - 1) + " - " + random_expr(rng, depth - 1);
    case 6: return random_expr(rng, depth - 1) + "*" + random_expr(rng, depth - 1);
    case 7: return "-" + random_expr(rng, depth - 1);
    case 8: return "sin(" + random_expr(rng, depth - 1) + ")*sig1";
    default: return "abs(" + random_expr(rng, depth - 1) + ")^2";
  }
}

}  // namespace

TEST_CASE("print then reparse is structurally identical") {
  std::mt19937 rng(7);
  for (int i = 0; i < 500; ++i) {
    const std::string src = random_expr(rng, 5);
    const ExprAst first = parse_expr(src, 2, kParams);
    const ExprAst second = parse_expr(to_string(first), 2, kParams);
    INFO(src);
    CHECK(structurally_equal(first, second));
  }
}

TEST_CASE("compiled form matches the tree walker bit for bit") {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> v(-2.0, 2.0);
  for (int i = 0; i < 300; ++i) {
    const ExprAst ast = parse_expr(random_expr(rng, 6), 2, kParams);
    const CompiledExpr code(ast);
    const std::vector<double> state = {v(rng), v(rng)};
    const std::vector<double> params = {v(rng), v(rng)};
    const EvalEnv env{v(rng), state, params};
    const double a = eval_expr(ast, env);
    const double b = code(env);
    CHECK(((a == b) || (std::isnan(a) && std::isnan(b))));
    // Same env, same value.
    CHECK(((code(env) == b) || std::isnan(b)));
  }
}
