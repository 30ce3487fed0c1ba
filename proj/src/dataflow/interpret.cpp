// SPDX-License-Identifier: Apache-2.0
#include "dirpe/dataflow/interpret.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <map>
#include <string>

#include "dirpe/core/error.hpp"

namespace dirpe {
namespace {

using Scope = std::map<std::string, MiniValue>;

constexpr int kMaxDepth = 200;

struct Context {
  const MiniProgram& program;
  int depth;
};

template <class F>
MiniValue zip(const MiniValue& a, const MiniValue& b, F f) {
  if (a.size() != b.size() && a.size() != 1 && b.size() != 1) {
    throw InvalidArgument("length mismatch " + std::to_string(a.size()) + " vs " + std::to_string(b.size()));
  }
  const std::size_t n = std::max(a.size(), b.size());
  MiniValue out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = f(a[a.size() == 1 ? 0 : i], b[b.size() == 1 ? 0 : i]);
  return out;
}

template <class F>
MiniValue map_values(const MiniValue& a, F f) {
  MiniValue out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = f(a[i]);
  return out;
}

/// Out-of-range values (including NaN) become 0 rather than undefined.
std::int64_t as_int(double x) { return std::isfinite(x) && std::fabs(x) < 9.2e18 ? static_cast<std::int64_t>(x) : 0; }

double constant(const std::string& text) {
  if (text == "True") return 1.0;
  if (text == "False" || text == "None") return 0.0;
  return std::stod(text);
}

MiniValue eval(const Expr& e, const Scope& scope, const Context& ctx);
MiniValue invoke(const Context& ctx, const std::vector<MiniValue>& args);

MiniValue call(const Expr& e, const Scope& scope, const Context& ctx) {
  std::vector<MiniValue> args;
  for (const Expr& a : e.args) args.push_back(eval(a, scope, ctx));
  const std::string& f = e.text;
  if (!e.method && f == ctx.program.name) return invoke(ctx, args);
  auto arity = [&](std::size_t n) {
    if (args.size() != n) throw InvalidArgument(f + " expects " + std::to_string(n) + " argument(s)");
  };
  if (f == "sum") {
    arity(1);
    double s = 0.0;
    for (double x : args[0]) s += x;
    return {s};
  }
  if (f == "min" || f == "max") {
    arity(2);
    return zip(args[0], args[1], [&](double a, double b) { return f == "min" ? std::min(a, b) : std::max(a, b); });
  }
  if (f == "abs" || f == "sqrt" || f == "exp" || f == "log") {
    arity(1);
    return map_values(args[0], [&](double x) {
      if (f == "abs") return std::fabs(x);
      if (f == "sqrt") return std::sqrt(x);
      if (f == "exp") return std::exp(x);
      return std::log(x);
    });
  }
  throw InvalidArgument("unknown function '" + f + "'");
}

MiniValue eval(const Expr& e, const Scope& scope, const Context& ctx) {
  switch (e.kind) {
    case Expr::Kind::constant:
      return {constant(e.text)};
    case Expr::Kind::variable: {
      const auto it = scope.find(e.text);
      if (it == scope.end()) throw InvalidArgument("unbound variable '" + e.text + "'");
      return it->second;
    }
    case Expr::Kind::call:
      return call(e, scope, ctx);
    case Expr::Kind::unary: {
      const MiniValue x = eval(e.args[0], scope, ctx);
      if (e.text == "-") return map_values(x, [](double v) { return -v; });
      return map_values(x, [](double v) { return static_cast<double>(~as_int(v)); });
    }
    case Expr::Kind::binary:
      break;
  }
  const MiniValue a = eval(e.args[0], scope, ctx);
  const MiniValue b = eval(e.args[1], scope, ctx);
  const std::string& op = e.text;
  if (op == "+") return zip(a, b, [](double x, double y) { return x + y; });
  if (op == "-") return zip(a, b, [](double x, double y) { return x - y; });
  if (op == "*") return zip(a, b, [](double x, double y) { return x * y; });
  if (op == "/") return zip(a, b, [](double x, double y) { return x / y; });
  if (op == "**") return zip(a, b, [](double x, double y) { return std::pow(x, y); });
  if (op == "==") return zip(a, b, [](double x, double y) { return x == y ? 1.0 : 0.0; });
  if (op == "<") return zip(a, b, [](double x, double y) { return x < y ? 1.0 : 0.0; });
  if (op == ">") return zip(a, b, [](double x, double y) { return x > y ? 1.0 : 0.0; });
  if (op == "&") return zip(a, b, [](double x, double y) { return static_cast<double>(as_int(x) & as_int(y)); });
  if (op == "|") return zip(a, b, [](double x, double y) { return static_cast<double>(as_int(x) | as_int(y)); });
  throw InvalidArgument("unknown operator '" + op + "'");
}

const MiniValue* run(const std::vector<Stmt>& body, Scope& scope, const Context& ctx) {
  for (const Stmt& s : body) {
    switch (s.kind) {
      case Stmt::Kind::assign:
        scope[s.target] = eval(s.value, scope, ctx);
        break;
      case Stmt::Kind::ret:
        scope["\x01return"] = eval(s.value, scope, ctx);
        return &scope["\x01return"];
      case Stmt::Kind::branch: {
        const MiniValue c = eval(s.value, scope, ctx);
        if (c.size() != 1) throw InvalidArgument("if condition must be a scalar");
        if (const MiniValue* r = run(c[0] != 0.0 ? s.then_body : s.else_body, scope, ctx)) return r;
        break;
      }
    }
  }
  return nullptr;
}

MiniValue invoke(const Context& ctx, const std::vector<MiniValue>& args) {
  const MiniProgram& p = ctx.program;
  if (args.size() != p.params.size()) {
    throw InvalidArgument(p.name + " takes " + std::to_string(p.params.size()) + " argument(s)");
  }
  if (ctx.depth >= kMaxDepth) throw InvalidArgument("recursion deeper than " + std::to_string(kMaxDepth));
  Scope scope;
  for (std::size_t i = 0; i < args.size(); ++i) scope[p.params[i]] = args[i];
  const Context inner{p, ctx.depth + 1};
  const MiniValue* r = run(p.body, scope, inner);
  if (r == nullptr) throw InvalidArgument(p.name + " finished without returning");
  return *r;
}

}  // namespace

MiniValue interpret(const MiniProgram& p, const std::vector<MiniValue>& args) { return invoke(Context{p, 0}, args); }

bool same_value(const MiniValue& a, const MiniValue& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] != b[i] && std::bit_cast<std::uint64_t>(a[i]) != std::bit_cast<std::uint64_t>(b[i])) return false;
  }
  return true;
}

}  // namespace dirpe
