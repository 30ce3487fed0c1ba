// SPDX-License-Identifier: Apache-2.0
#include "dirpe/dataflow/parser.hpp"

#include <algorithm>
#include <cctype>
#include <vector>

#include "dirpe/core/error.hpp"

namespace dirpe {
namespace {

enum class Tok { name, number, op, newline, indent, dedent, end };

struct Token {
  Tok kind;
  std::string text;
  Span span;
};

bool is_keyword_constant(std::string_view s) { return s == "True" || s == "False" || s == "None"; }

std::vector<Token> lex(std::string_view src) {
  std::vector<Token> out;
  std::vector<int> indents{0};
  std::vector<Span> open_parens;
  int depth = 0;
  std::size_t i = 0;
  int line = 1;
  std::size_t line_start = 0;
  bool at_line_start = true;
  auto col = [&](std::size_t pos) { return static_cast<int>(pos - line_start) + 1; };

  while (i <= src.size()) {
    if (at_line_start && depth == 0) {
      // Measure indentation; blank and comment-only lines do not count.
      std::size_t j = i;
      while (j < src.size() && src[j] == ' ') ++j;
      if (j < src.size() && src[j] == '\t') throw SyntaxError("tabs are not allowed for indentation", line, col(j));
      if (j >= src.size()) {
        i = j;
        break;
      }
      if (src[j] == '\n' || src[j] == '\r' || src[j] == '#') {
        while (j < src.size() && src[j] != '\n') ++j;
        i = j + 1;
        ++line;
        line_start = i;
        continue;
      }
      const int width = static_cast<int>(j - i);
      if (width > indents.back()) {
        indents.push_back(width);
        out.push_back({Tok::indent, "", {line, col(j)}});
      } else {
        while (width < indents.back()) {
          indents.pop_back();
          out.push_back({Tok::dedent, "", {line, col(j)}});
        }
        if (width != indents.back()) throw SyntaxError("inconsistent dedent", line, col(j));
      }
      i = j;
      at_line_start = false;
    }
    if (i >= src.size()) break;
    const char c = src[i];
    const Span here{line, col(i)};
    if (c == '\n') {
      if (depth == 0) {
        out.push_back({Tok::newline, "", here});
        at_line_start = true;
      }
      ++i;
      ++line;
      line_start = i;
      continue;
    }
    if (c == ' ' || c == '\r' || c == '\t') {
      ++i;
      continue;
    }
    if (c == '#') {
      while (i < src.size() && src[i] != '\n') ++i;
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_')) ++j;
      out.push_back({Tok::name, std::string(src.substr(i, j - i)), here});
      i = j;
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      if (j < src.size() && src[j] == '.' && j + 1 < src.size() && std::isdigit(static_cast<unsigned char>(src[j + 1]))) {
        ++j;
        while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      }
      if (j < src.size() && (src[j] == 'e' || src[j] == 'E')) {
        std::size_t k = j + 1;
        if (k < src.size() && (src[k] == '+' || src[k] == '-')) ++k;
        if (k < src.size() && std::isdigit(static_cast<unsigned char>(src[k]))) {
          while (k < src.size() && std::isdigit(static_cast<unsigned char>(src[k]))) ++k;
          j = k;
        }
      }
      out.push_back({Tok::number, std::string(src.substr(i, j - i)), here});
      i = j;
      continue;
    }
    if (c == '=' || c == '*') {
      if (i + 1 < src.size() && src[i + 1] == c) {
        out.push_back({Tok::op, std::string(2, c), here});
        i += 2;
        continue;
      }
    }
    static constexpr std::string_view kSingle = "<>|&+-*/~(),:=;.";
    if (kSingle.find(c) == std::string_view::npos) {
      throw SyntaxError(std::string("unexpected character '") + c + "'", here.line, here.column);
    }
    if (c == '(') {
      ++depth;
      open_parens.push_back(here);
    }
    if (c == ')') {
      if (depth == 0) throw SyntaxError("unbalanced ')'", here.line, here.column);
      --depth;
      open_parens.pop_back();
    }
    out.push_back({Tok::op, std::string(1, c), here});
    ++i;
  }
  const Span eof{line, col(std::min(i, src.size()))};
  if (depth != 0) throw SyntaxError("unclosed '('", open_parens.back().line, open_parens.back().column);
  if (!out.empty() && out.back().kind != Tok::newline && out.back().kind != Tok::dedent) {
    out.push_back({Tok::newline, "", eof});
  }
  while (indents.size() > 1) {
    indents.pop_back();
    out.push_back({Tok::dedent, "", eof});
  }
  out.push_back({Tok::end, "", eof});
  return out;
}

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

  MiniProgram program() {
    MiniProgram p;
    p.span = peek().span;
    expect_name("def");
    p.name = name("function name");
    expect_op("(");
    if (!accept_op(")")) {
      do {
        if (peek().kind == Tok::op && peek().text == ")") break;
        p.params.push_back(name("parameter"));
      } while (accept_op(","));
      expect_op(")");
    }
    expect_op(":");
    p.body = suite(true);
    if (peek().kind != Tok::end) fail("expected end of input after the function body");
    if (p.body.empty() || p.body.back().kind != Stmt::Kind::ret) {
      throw SyntaxError("function body must end with a return statement", p.span.line, p.span.column);
    }
    for (std::size_t i = 0; i + 1 < p.body.size(); ++i) {
      if (p.body[i].kind == Stmt::Kind::ret) {
        throw SyntaxError("return must be the last statement", p.body[i].span.line, p.body[i].span.column);
      }
    }
    return p;
  }

 private:
  std::vector<Token> toks_;
  std::size_t pos_ = 0;

  const Token& peek() const { return toks_[pos_]; }
  const Token& next() { return toks_[pos_++]; }

  [[noreturn]] void fail(const std::string& msg) const {
    throw SyntaxError(msg, peek().span.line, peek().span.column);
  }

  bool accept_op(std::string_view op) {
    if (peek().kind == Tok::op && peek().text == op) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect_op(std::string_view op) {
    if (!accept_op(op)) fail("expected '" + std::string(op) + "'");
  }
  bool is_name(std::string_view word) const { return peek().kind == Tok::name && peek().text == word; }
  void expect_name(std::string_view word) {
    if (!is_name(word)) fail("expected '" + std::string(word) + "'");
    ++pos_;
  }
  std::string name(const std::string& what) {
    if (peek().kind != Tok::name || is_reserved(peek().text)) fail("expected " + what);
    return next().text;
  }
  static bool is_reserved(std::string_view s) {
    return s == "def" || s == "if" || s == "else" || s == "elif" || s == "return" || is_keyword_constant(s);
  }

  std::vector<Stmt> suite(bool top) {
    std::vector<Stmt> body;
    if (peek().kind != Tok::newline) {
      simple_line(body, top);
      return body;
    }
    ++pos_;
    if (peek().kind != Tok::indent) fail("expected an indented block");
    ++pos_;
    while (peek().kind != Tok::dedent && peek().kind != Tok::end) statement(body, top);
    if (peek().kind == Tok::dedent) ++pos_;
    return body;
  }

  void statement(std::vector<Stmt>& body, bool top) {
    if (is_name("if")) {
      body.push_back(branch(top));
      return;
    }
    simple_line(body, top);
  }

  Stmt branch(bool top) {
    Stmt s;
    s.kind = Stmt::Kind::branch;
    s.span = next().span;
    s.value = expr();
    expect_op(":");
    s.then_body = suite(false);
    if (is_name("elif")) {
      s.else_body.push_back(branch(top));
    } else if (is_name("else")) {
      ++pos_;
      expect_op(":");
      s.else_body = suite(false);
    }
    return s;
  }

  void simple_line(std::vector<Stmt>& body, bool top) {
    do {
      if (peek().kind == Tok::newline) break;
      body.push_back(simple(top));
    } while (accept_op(";"));
    if (peek().kind != Tok::newline) fail("expected end of line");
    ++pos_;
  }

  Stmt simple(bool top) {
    Stmt s;
    s.span = peek().span;
    if (is_name("return")) {
      if (!top) fail("return is only allowed in the function body");
      ++pos_;
      s.kind = Stmt::Kind::ret;
      s.value = expr();
      return s;
    }
    s.kind = Stmt::Kind::assign;
    s.target = name("statement");
    expect_op("=");
    s.value = expr();
    return s;
  }

  static Expr binary(std::string op, Expr lhs, Expr rhs, Span span) {
    Expr e;
    e.kind = Expr::Kind::binary;
    e.text = std::move(op);
    e.span = span;
    e.args.push_back(std::move(lhs));
    e.args.push_back(std::move(rhs));
    return e;
  }

  Expr expr() {
    Expr lhs = bit_or();
    if (peek().kind == Tok::op && (peek().text == "==" || peek().text == "<" || peek().text == ">")) {
      const Token op = next();
      Expr rhs = bit_or();
      if (peek().kind == Tok::op && (peek().text == "==" || peek().text == "<" || peek().text == ">")) {
        fail("chained comparisons are not supported");
      }
      return binary(op.text, std::move(lhs), std::move(rhs), op.span);
    }
    return lhs;
  }

  template <class Next>
  Expr left_assoc(std::initializer_list<std::string_view> ops, Next next_level) {
    Expr lhs = (this->*next_level)();
    while (peek().kind == Tok::op && std::find(ops.begin(), ops.end(), peek().text) != ops.end()) {
      const Token op = next();
      Expr rhs = (this->*next_level)();
      lhs = binary(op.text, std::move(lhs), std::move(rhs), op.span);
    }
    return lhs;
  }

  Expr bit_or() { return left_assoc({"|"}, &Parser::bit_and); }
  Expr bit_and() { return left_assoc({"&"}, &Parser::sum); }
  Expr sum() { return left_assoc({"+", "-"}, &Parser::product); }
  Expr product() { return left_assoc({"*", "/"}, &Parser::unary); }

  Expr unary() {
    if (peek().kind == Tok::op && (peek().text == "~" || peek().text == "-")) {
      const Token op = next();
      Expr e;
      e.kind = Expr::Kind::unary;
      e.text = op.text;
      e.span = op.span;
      e.args.push_back(unary());
      return e;
    }
    return power();
  }

  Expr power() {
    Expr base = postfix();
    if (peek().kind == Tok::op && peek().text == "**") {
      const Token op = next();
      Expr exponent = unary();
      return binary(op.text, std::move(base), std::move(exponent), op.span);
    }
    return base;
  }

  std::vector<Expr> call_args() {
    std::vector<Expr> args;
    if (accept_op(")")) return args;
    do {
      if (peek().kind == Tok::op && peek().text == ")") break;
      args.push_back(expr());
    } while (accept_op(","));
    expect_op(")");
    return args;
  }

  Expr postfix() {
    Expr e = primary();
    while (peek().kind == Tok::op && peek().text == ".") {
      ++pos_;
      Expr call;
      call.kind = Expr::Kind::call;
      call.method = true;
      call.span = peek().span;
      call.text = name("method name");
      expect_op("(");
      call.args.push_back(std::move(e));
      for (auto& a : call_args()) call.args.push_back(std::move(a));
      e = std::move(call);
    }
    return e;
  }

  Expr primary() {
    const Token& t = peek();
    Expr e;
    e.span = t.span;
    if (t.kind == Tok::number) {
      e.kind = Expr::Kind::constant;
      e.text = next().text;
      return e;
    }
    if (t.kind == Tok::name && is_keyword_constant(t.text)) {
      e.kind = Expr::Kind::constant;
      e.text = next().text;
      return e;
    }
    if (t.kind == Tok::name && !is_reserved(t.text)) {
      e.text = next().text;
      if (accept_op("(")) {
        e.kind = Expr::Kind::call;
        e.args = call_args();
      } else {
        e.kind = Expr::Kind::variable;
      }
      return e;
    }
    if (accept_op("(")) {
      Expr inner = expr();
      expect_op(")");
      return inner;
    }
    fail("expected an expression");
  }
};

int precedence(const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::variable:
    case Expr::Kind::constant:
      return 9;
    case Expr::Kind::call:
      return 8;
    case Expr::Kind::unary:
      return 6;
    case Expr::Kind::binary:
      break;
  }
  const std::string& op = e.text;
  if (op == "**") return 7;
  if (op == "*" || op == "/") return 5;
  if (op == "+" || op == "-") return 4;
  if (op == "&") return 3;
  if (op == "|") return 2;
  return 1;
}

std::string wrap(const Expr& e, bool parens) { return parens ? "(" + to_source(e) + ")" : to_source(e); }

void emit_body(const std::vector<Stmt>& body, int indent, std::string& out);

void emit_stmt(const Stmt& s, int indent, std::string& out) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  switch (s.kind) {
    case Stmt::Kind::assign:
      out += pad + s.target + " = " + to_source(s.value) + "\n";
      return;
    case Stmt::Kind::ret:
      out += pad + "return " + to_source(s.value) + "\n";
      return;
    case Stmt::Kind::branch:
      out += pad + "if " + to_source(s.value) + ":\n";
      emit_body(s.then_body, indent + 2, out);
      if (!s.else_body.empty()) {
        out += pad + "else:\n";
        emit_body(s.else_body, indent + 2, out);
      }
      return;
  }
}

void emit_body(const std::vector<Stmt>& body, int indent, std::string& out) {
  for (const Stmt& s : body) emit_stmt(s, indent, out);
}

}  // namespace

MiniProgram parse(std::string_view source) { return Parser(lex(source)).program(); }

std::string to_source(const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::variable:
    case Expr::Kind::constant:
      return e.text;
    case Expr::Kind::unary:
      return e.text + wrap(e.args[0], precedence(e.args[0]) < 6);
    case Expr::Kind::call: {
      std::string out;
      std::size_t first = 0;
      if (e.method) {
        out = wrap(e.args[0], precedence(e.args[0]) < 8) + ".";
        first = 1;
      }
      out += e.text + "(";
      for (std::size_t i = first; i < e.args.size(); ++i) {
        if (i > first) out += ", ";
        out += to_source(e.args[i]);
      }
      return out + ")";
    }
    case Expr::Kind::binary:
      break;
  }
  const int prec = precedence(e);
  const Expr& lhs = e.args[0];
  const Expr& rhs = e.args[1];
  bool left_parens = false, right_parens = false;
  if (e.text == "**") {
    left_parens = precedence(lhs) <= prec;
    right_parens = precedence(rhs) < 6;
  } else if (prec == 1) {
    left_parens = precedence(lhs) <= prec;
    right_parens = precedence(rhs) <= prec;
  } else {
    left_parens = precedence(lhs) < prec;
    right_parens = precedence(rhs) <= prec;
  }
  return wrap(lhs, left_parens) + " " + e.text + " " + wrap(rhs, right_parens);
}

std::string to_source(const MiniProgram& p) {
  std::string out = "def " + p.name + "(";
  for (std::size_t i = 0; i < p.params.size(); ++i) {
    if (i > 0) out += ", ";
    out += p.params[i];
  }
  out += "):\n";
  emit_body(p.body, 2, out);
  return out;
}

}  // namespace dirpe
