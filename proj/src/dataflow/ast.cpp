// SPDX-License-Identifier: Apache-2.0
#include "dirpe/dataflow/ast.hpp"

#include <algorithm>

namespace dirpe {
namespace {

template <class T>
bool same_list(const std::vector<T>& a, const std::vector<T>& b) {
  return a.size() == b.size() &&
         std::equal(a.begin(), a.end(), b.begin(), [](const T& x, const T& y) { return same_tree(x, y); });
}

void collect_reads(const Expr& e, std::vector<std::string>& out) {
  if (e.kind == Expr::Kind::variable) out.push_back(e.text);
  for (const Expr& a : e.args) collect_reads(a, out);
}

void collect(const Stmt& s, std::vector<std::string>* writes, std::vector<std::string>* reads) {
  if (s.kind == Stmt::Kind::assign && writes != nullptr) writes->push_back(s.target);
  if (reads != nullptr) collect_reads(s.value, *reads);
  for (const auto* body : {&s.then_body, &s.else_body}) {
    for (const Stmt& inner : *body) collect(inner, writes, reads);
  }
}

std::vector<std::string> sorted_unique(std::vector<std::string> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

}  // namespace

bool same_tree(const Expr& a, const Expr& b) {
  return a.kind == b.kind && a.text == b.text && a.method == b.method && same_list(a.args, b.args);
}

bool same_tree(const Stmt& a, const Stmt& b) {
  return a.kind == b.kind && a.target == b.target && same_tree(a.value, b.value) &&
         same_list(a.then_body, b.then_body) && same_list(a.else_body, b.else_body);
}

bool same_tree(const MiniProgram& a, const MiniProgram& b) {
  return a.name == b.name && a.params == b.params && same_list(a.body, b.body);
}

bool is_commutative(const std::string& op) {
  return op == "==" || op == "&" || op == "|" || op == "+" || op == "*";
}

std::vector<std::string> written_variables(const Stmt& s) {
  std::vector<std::string> out;
  collect(s, &out, nullptr);
  return sorted_unique(std::move(out));
}

std::vector<std::string> read_variables(const Stmt& s) {
  std::vector<std::string> out;
  collect(s, nullptr, &out);
  return sorted_unique(std::move(out));
}

}  // namespace dirpe
