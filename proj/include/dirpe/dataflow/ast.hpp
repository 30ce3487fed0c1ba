// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

namespace dirpe {

/// 1-based source position.
struct Span {
  int line = 0;
  int column = 0;
};

struct Expr {
  enum class Kind { variable, constant, call, unary, binary };

  Kind kind = Kind::constant;
  /// Identifier, constant literal, callee name or operator token.
  std::string text;
  /// Operands in source order. A method call stores its receiver first.
  std::vector<Expr> args;
  /// `x.f(y)` rather than `f(x, y)`.
  bool method = false;
  Span span;
};

struct Stmt {
  enum class Kind { assign, branch, ret };

  Kind kind = Kind::assign;
  /// Assigned variable (assign only).
  std::string target;
  /// Assigned value, branch condition or returned value.
  Expr value;
  std::vector<Stmt> then_body;
  std::vector<Stmt> else_body;
  Span span;
};

struct MiniProgram {
  std::string name;
  std::vector<std::string> params;
  std::vector<Stmt> body;
  Span span;
};

/// Structural equality; spans are ignored.
bool same_tree(const Expr& a, const Expr& b);
bool same_tree(const Stmt& a, const Stmt& b);
bool same_tree(const MiniProgram& a, const MiniProgram& b);

/// Unary: "~", "-". Binary: "==", "<", ">", "|", "&", "+", "-", "*", "/", "**".
bool is_commutative(const std::string& op);

/// Variables written anywhere inside `s` (both branches of an if).
std::vector<std::string> written_variables(const Stmt& s);
/// Variables read anywhere inside `s`, including nested conditions.
std::vector<std::string> read_variables(const Stmt& s);

}  // namespace dirpe
