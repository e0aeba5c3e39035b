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

#include "hude/expr.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <optional>

#include "hude/errors.hpp"

namespace hude {

namespace {

std::optional<Function> lookup_function(std::string_view name) {
  if (name == "exp") return Function::kExp;
  if (name == "ln") return Function::kLn;
  if (name == "sin") return Function::kSin;
  if (name == "cos") return Function::kCos;
  if (name == "abs") return Function::kAbs;
  return std::nullopt;
}

const char* function_name(Function f) {
  switch (f) {
    case Function::kExp: return "exp";
    case Function::kLn: return "ln";
    case Function::kSin: return "sin";
    case Function::kCos: return "cos";
    case Function::kAbs: return "abs";
  }
  return "?";
}

char op_char(BinaryOp op) {
  switch (op) {
    case BinaryOp::kAdd: return '+';
    case BinaryOp::kSub: return '-';
    case BinaryOp::kMul: return '*';
    case BinaryOp::kDiv: return '/';
    case BinaryOp::kPow: return '^';
  }
  return '?';
}

class Parser {
 public:
  Parser(std::string_view src, int order, std::span<const std::string> params)
      : src_(src), order_(order), params_(params) {}

  ExprAst parse() {
    skip_ws();
    if (pos_ >= src_.size()) throw ParseError("empty expression", pos_);
    ExprAst root = parse_sum();
    skip_ws();
    if (pos_ < src_.size()) {
      throw ParseError(std::string("unexpected '") + src_[pos_] + "'", pos_);
    }
    return root;
  }

 private:
  void skip_ws() {
    while (pos_ < src_.size() &&
           std::isspace(static_cast<unsigned char>(src_[pos_]))) {
      ++pos_;
    }
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < src_.size() && src_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  static ExprAst make_binary(BinaryOp op, ExprAst lhs, ExprAst rhs) {
    ExprAst node;
    node.kind = NodeKind::kBinary;
    node.op = op;
    node.span = {lhs.span.begin, rhs.span.end};
    node.children.push_back(std::move(lhs));
    node.children.push_back(std::move(rhs));
    return node;
  }

  ExprAst parse_sum() {
    ExprAst lhs = parse_product();
    for (;;) {
      if (accept('+')) {
        lhs = make_binary(BinaryOp::kAdd, std::move(lhs), parse_product());
      } else if (accept('-')) {
        lhs = make_binary(BinaryOp::kSub, std::move(lhs), parse_product());
      } else {
        return lhs;
      }
    }
  }

  ExprAst parse_product() {
    ExprAst lhs = parse_unary();
    for (;;) {
      if (accept('*')) {
        lhs = make_binary(BinaryOp::kMul, std::move(lhs), parse_unary());
      } else if (accept('/')) {
        lhs = make_binary(BinaryOp::kDiv, std::move(lhs), parse_unary());
      } else {
        return lhs;
      }
    }
  }

  ExprAst parse_unary() {
    skip_ws();
    const std::size_t start = pos_;
    if (accept('-')) {
      ExprAst operand = parse_unary();
      ExprAst node;
      node.kind = NodeKind::kUnary;
      node.span = {start, operand.span.end};
      node.children.push_back(std::move(operand));
      return node;
    }
    return parse_power();
  }

  ExprAst parse_power() {
    ExprAst base = parse_primary();
    if (accept('^')) {
      return make_binary(BinaryOp::kPow, std::move(base), parse_unary());
    }
    return base;
  }

  ExprAst parse_primary() {
    skip_ws();
    if (pos_ >= src_.size()) throw ParseError("expected operand", pos_);
    const std::size_t start = pos_;
    const char c = src_[pos_];
    if (c == '(') {
      ++pos_;
      ExprAst inner = parse_sum();
      if (!accept(')')) throw ParseError("expected ')'", pos_);
      inner.span = {start, pos_};
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      return parse_number();
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      return parse_identifier();
    }
    throw ParseError(std::string("unexpected '") + c + "'", pos_);
  }

  ExprAst parse_number() {
    const std::size_t start = pos_;
    auto digits = [&] {
      while (pos_ < src_.size() &&
             std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
        ++pos_;
      }
    };
    digits();
    if (pos_ < src_.size() && src_[pos_] == '.') {
      ++pos_;
      digits();
    }
    if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
      std::size_t save = pos_++;
      if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-')) {
        ++pos_;
      }
      if (pos_ < src_.size() &&
          std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
        digits();
      } else {
        pos_ = save;
      }
    }
    ExprAst node;
    node.kind = NodeKind::kConstant;
    const auto text = src_.substr(start, pos_ - start);
    auto [ptr, ec] =
        std::from_chars(text.data(), text.data() + text.size(), node.value);
    if (ec != std::errc() || ptr != text.data() + text.size()) {
      throw ParseError("malformed number", start);
    }
    node.span = {start, pos_};
    return node;
  }

  ExprAst parse_identifier() {
    const std::size_t start = pos_;
    while (pos_ < src_.size() &&
           (std::isalnum(static_cast<unsigned char>(src_[pos_])) ||
            src_[pos_] == '_')) {
      ++pos_;
    }
    const std::string name(src_.substr(start, pos_ - start));

    skip_ws();
    if (pos_ < src_.size() && src_[pos_] == '(') {
      const auto func = lookup_function(name);
      if (!func) throw ParseError("unknown function '" + name + "'", start);
      ++pos_;
      ExprAst arg = parse_sum();
      if (accept(',')) {
        throw ParseError("function '" + name + "' takes exactly 1 argument",
                         pos_ - 1);
      }
      if (!accept(')')) throw ParseError("expected ')'", pos_);
      ExprAst node;
      node.kind = NodeKind::kCall;
      node.func = *func;
      node.span = {start, pos_};
      node.children.push_back(std::move(arg));
      return node;
    }
    if (lookup_function(name)) {
      throw ParseError("function '" + name + "' requires an argument list",
                       start);
    }

    ExprAst node;
    node.kind = NodeKind::kVariable;
    node.name = name;
    node.span = {start, start + name.size()};
    if (name == "t") {
      node.var = VariableKind::kTime;
      return node;
    }
    if (auto it = std::find(params_.begin(), params_.end(), name);
        it != params_.end()) {
      node.var = VariableKind::kParam;
      node.index = static_cast<std::size_t>(it - params_.begin());
      return node;
    }
    if (name.size() >= 2 && name[0] == 'x' &&
        std::all_of(name.begin() + 1, name.end(),
                    [](char ch) { return std::isdigit(
                        static_cast<unsigned char>(ch)); }) &&
        (name.size() == 2 || name[1] != '0')) {
      std::size_t idx = 0;
      std::from_chars(name.data() + 1, name.data() + name.size(), idx);
      if (idx < static_cast<std::size_t>(order_)) {
        node.var = VariableKind::kState;
        node.index = idx;
        return node;
      }
    }
    throw ParseError("undeclared identifier '" + name + "'", start);
  }

  std::string_view src_;
  int order_;
  std::span<const std::string> params_;
  std::size_t pos_ = 0;
};

void require_finite(double v, const char* what) {
  if (std::isnan(v)) throw EvalError(std::string("domain error in ") + what);
}

double apply_binary(BinaryOp op, double a, double b) {
  switch (op) {
    case BinaryOp::kAdd: return a + b;
    case BinaryOp::kSub: return a - b;
    case BinaryOp::kMul: return a * b;
    case BinaryOp::kDiv:
      if (b == 0.0) throw EvalError("division by zero");
      return a / b;
    case BinaryOp::kPow: {
      const double r = std::pow(a, b);
      require_finite(r, "'^'");
      return r;
    }
  }
  return 0.0;
}

double apply_function(Function f, double a) {
  switch (f) {
    case Function::kExp: return std::exp(a);
    case Function::kLn:
      if (!(a > 0.0)) throw EvalError("ln of non-positive argument");
      return std::log(a);
    case Function::kSin: return std::sin(a);
    case Function::kCos: return std::cos(a);
    case Function::kAbs: return std::fabs(a);
  }
  return 0.0;
}

double lookup(VariableKind kind, std::size_t index, const EvalEnv& env) {
  switch (kind) {
    case VariableKind::kTime: return env.t;
    case VariableKind::kState:
      if (index >= env.state.size()) {
        throw EvalError("missing binding for x" + std::to_string(index));
      }
      return env.state[index];
    case VariableKind::kParam:
      if (index >= env.params.size()) {
        throw EvalError("missing binding for parameter slot " +
                        std::to_string(index));
      }
      return env.params[index];
  }
  return 0.0;
}

void print(const ExprAst& ast, std::string& out) {
  switch (ast.kind) {
    case NodeKind::kConstant: {
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.17g", ast.value);
      out += buf;
      return;
    }
    case NodeKind::kVariable:
      out += ast.name;
      return;
    case NodeKind::kUnary:
      out += "(-";
      print(ast.children[0], out);
      out += ')';
      return;
    case NodeKind::kBinary:
      out += '(';
      print(ast.children[0], out);
      out += ' ';
      out += op_char(ast.op);
      out += ' ';
      print(ast.children[1], out);
      out += ')';
      return;
    case NodeKind::kCall:
      out += function_name(ast.func);
      out += '(';
      print(ast.children[0], out);
      out += ')';
      return;
  }
}

}  // namespace

bool structurally_equal(const ExprAst& a, const ExprAst& b) {
  if (a.kind != b.kind || a.children.size() != b.children.size()) return false;
  switch (a.kind) {
    case NodeKind::kConstant:
      if (a.value != b.value) return false;
      break;
    case NodeKind::kVariable:
      if (a.var != b.var || a.index != b.index || a.name != b.name) {
        return false;
      }
      break;
    case NodeKind::kBinary:
      if (a.op != b.op) return false;
      break;
    case NodeKind::kCall:
      if (a.func != b.func) return false;
      break;
    case NodeKind::kUnary:
      break;
  }
  for (std::size_t i = 0; i < a.children.size(); ++i) {
    if (!structurally_equal(a.children[i], b.children[i])) return false;
  }
  return true;
}

ExprAst parse_expr(std::string_view src, int order,
                   std::span<const std::string> params) {
  if (order < 1) throw PreconditionError("expression order must be >= 1");
  return Parser(src, order, params).parse();
}

std::string to_string(const ExprAst& ast) {
  std::string out;
  print(ast, out);
  return out;
}

double eval_expr(const ExprAst& ast, const EvalEnv& env) {
  switch (ast.kind) {
    case NodeKind::kConstant:
      return ast.value;
    case NodeKind::kVariable:
      return lookup(ast.var, ast.index, env);
    case NodeKind::kUnary:
      return -eval_expr(ast.children[0], env);
    case NodeKind::kBinary: {
      const double a = eval_expr(ast.children[0], env);
      const double b = eval_expr(ast.children[1], env);
      return apply_binary(ast.op, a, b);
    }
    case NodeKind::kCall:
      return apply_function(ast.func, eval_expr(ast.children[0], env));
  }
  return 0.0;
}

CompiledExpr::CompiledExpr(const ExprAst& ast) {
  emit(ast);
  // Postfix stack depth.
  std::size_t depth = 0;
  for (const auto& ins : program_) {
    switch (ins.code) {
      case Code::kConst: case Code::kTime: case Code::kState: case Code::kParam:
        ++depth;
        break;
      case Code::kAdd: case Code::kSub: case Code::kMul: case Code::kDiv:
      case Code::kPow:
        --depth;
        break;
      default:
        break;
    }
    max_depth_ = std::max(max_depth_, depth);
  }
}

void CompiledExpr::emit(const ExprAst& node) {
  switch (node.kind) {
    case NodeKind::kConstant:
      program_.push_back({Code::kConst, 0, node.value});
      return;
    case NodeKind::kVariable:
      switch (node.var) {
        case VariableKind::kTime:
          program_.push_back({Code::kTime, 0, 0.0});
          return;
        case VariableKind::kState:
          state_slots_ = std::max(state_slots_, node.index + 1);
          program_.push_back({Code::kState, node.index, 0.0});
          return;
        case VariableKind::kParam:
          param_slots_ = std::max(param_slots_, node.index + 1);
          program_.push_back({Code::kParam, node.index, 0.0});
          return;
      }
      return;
    case NodeKind::kUnary:
      emit(node.children[0]);
      program_.push_back({Code::kNeg, 0, 0.0});
      return;
    case NodeKind::kBinary: {
      emit(node.children[0]);
      emit(node.children[1]);
      static constexpr std::array<Code, 5> kCodes = {
          Code::kAdd, Code::kSub, Code::kMul, Code::kDiv, Code::kPow};
      program_.push_back({kCodes[static_cast<int>(node.op)], 0, 0.0});
      return;
    }
    case NodeKind::kCall: {
      emit(node.children[0]);
      static constexpr std::array<Code, 5> kCodes = {
          Code::kExp, Code::kLn, Code::kSin, Code::kCos, Code::kAbs};
      program_.push_back({kCodes[static_cast<int>(node.func)], 0, 0.0});
      return;
    }
  }
}

double CompiledExpr::operator()(const EvalEnv& env) const {
  if (program_.empty()) throw EvalError("empty compiled expression");
  if (state_slots_ > env.state.size() || param_slots_ > env.params.size()) {
    // Let the generic lookup report which binding is missing.
    for (const auto& ins : program_) {
      if (ins.code == Code::kState) lookup(VariableKind::kState, ins.index, env);
      if (ins.code == Code::kParam) lookup(VariableKind::kParam, ins.index, env);
    }
  }
  std::array<double, 32> small{};
  std::vector<double> large;
  double* stack = small.data();
  if (max_depth_ > small.size()) {
    large.resize(max_depth_);
    stack = large.data();
  }
  std::size_t sp = 0;
  for (const auto& ins : program_) {
    switch (ins.code) {
      case Code::kConst: stack[sp++] = ins.value; break;
      case Code::kTime: stack[sp++] = env.t; break;
      case Code::kState: stack[sp++] = env.state[ins.index]; break;
      case Code::kParam: stack[sp++] = env.params[ins.index]; break;
      case Code::kNeg: stack[sp - 1] = -stack[sp - 1]; break;
      case Code::kAdd: --sp; stack[sp - 1] = stack[sp - 1] + stack[sp]; break;
      case Code::kSub: --sp; stack[sp - 1] = stack[sp - 1] - stack[sp]; break;
      case Code::kMul: --sp; stack[sp - 1] = stack[sp - 1] * stack[sp]; break;
      case Code::kDiv:
        --sp;
        stack[sp - 1] = apply_binary(BinaryOp::kDiv, stack[sp - 1], stack[sp]);
        break;
      case Code::kPow:
        --sp;
        stack[sp - 1] = apply_binary(BinaryOp::kPow, stack[sp - 1], stack[sp]);
        break;
      case Code::kExp: stack[sp - 1] = std::exp(stack[sp - 1]); break;
      case Code::kLn:
        stack[sp - 1] = apply_function(Function::kLn, stack[sp - 1]);
        break;
      case Code::kSin: stack[sp - 1] = std::sin(stack[sp - 1]); break;
      case Code::kCos: stack[sp - 1] = std::cos(stack[sp - 1]); break;
      case Code::kAbs: stack[sp - 1] = std::fabs(stack[sp - 1]); break;
    }
  }
  return stack[0];
}

}  // namespace hude
