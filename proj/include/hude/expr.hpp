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

#ifndef HUDE_EXPR_HPP_
#define HUDE_EXPR_HPP_

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace hude {

/// Byte range [begin, end) of a node in its source text.
struct SourceSpan {
  std::size_t begin = 0;
  std::size_t end = 0;
};

enum class NodeKind { kConstant, kVariable, kUnary, kBinary, kCall };

enum class VariableKind { kTime, kState, kParam };

enum class BinaryOp { kAdd, kSub, kMul, kDiv, kPow };

enum class Function { kExp, kLn, kSin, kCos, kAbs };

/// Parsed arithmetic expression over `t`, `x0..x{n-1}` and declared
/// parameters. Immutable once built; variables are resolved to slot indices
/// at parse time so evaluation never does name lookup.
struct ExprAst {
  NodeKind kind = NodeKind::kConstant;
  double value = 0.0;                        // kConstant
  VariableKind var = VariableKind::kTime;    // kVariable
  std::size_t index = 0;                     // kVariable (state/param slot)
  std::string name;                          // kVariable identifier
  BinaryOp op = BinaryOp::kAdd;              // kBinary
  Function func = Function::kExp;            // kCall
  std::vector<ExprAst> children;             // kUnary: 1, kBinary: 2, kCall: 1
  SourceSpan span;
};

/// Structural equality; spans are ignored.
bool structurally_equal(const ExprAst& a, const ExprAst& b);

/// Parses `src`. Grammar, loosest binding first:
///   sum     := product (('+' | '-') product)*
///   product := unary (('*' | '/') unary)*
///   unary   := '-' unary | power
///   power   := primary ('^' unary)?        (right associative)
///   primary := number | identifier | identifier '(' sum ')' | '(' sum ')'
///
/// Throws ParseError on syntax errors, undeclared identifiers and
/// function-arity mismatches.
ExprAst parse_expr(std::string_view src, int order,
                   std::span<const std::string> params);

/// Prints in a form that parses back to a structurally identical tree.
std::string to_string(const ExprAst& ast);

/// Values for every slot an expression may reference.
struct EvalEnv {
  double t = 0.0;
  std::span<const double> state;
  std::span<const double> params;
};

/// Tree-walking evaluator. Throws EvalError on a missing binding or a
/// domain error (ln of a non-positive value, division by zero).
double eval_expr(const ExprAst& ast, const EvalEnv& env);

/// Flattened postfix form of an ExprAst for hot loops. Performs the same
/// floating-point operations in the same order as eval_expr, so results are
/// bit-identical.
class CompiledExpr {
 public:
  CompiledExpr() = default;
  explicit CompiledExpr(const ExprAst& ast);

  double operator()(const EvalEnv& env) const;

  /// Highest state / param slot referenced plus one (0 if none).
  std::size_t state_slots() const noexcept { return state_slots_; }
  std::size_t param_slots() const noexcept { return param_slots_; }

 private:
  enum class Code : unsigned char {
    kConst, kTime, kState, kParam, kNeg,
    kAdd, kSub, kMul, kDiv, kPow,
    kExp, kLn, kSin, kCos, kAbs
  };
  struct Instr {
    Code code;
    std::size_t index;
    double value;
  };

  void emit(const ExprAst& node);

  std::vector<Instr> program_;
  std::size_t max_depth_ = 0;
  std::size_t state_slots_ = 0;
  std::size_t param_slots_ = 0;
};

}  // namespace hude

#endif  // HUDE_EXPR_HPP_
