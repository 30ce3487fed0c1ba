// SPDX-License-Identifier: Apache-2.0
#include "dirpe/dataflow/reorder.hpp"

#include <algorithm>
#include <functional>

namespace dirpe {
namespace {

bool intersects(const std::vector<std::string>& a, const std::vector<std::string>& b) {
  std::vector<std::string> both;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(both));
  return !both.empty();
}

bool swappable(const Expr& e, bool commutative) {
  return commutative && e.kind == Expr::Kind::binary && is_commutative(e.text) &&
         e.args[0].kind != Expr::Kind::constant && e.args[1].kind != Expr::Kind::constant &&
         !same_tree(e.args[0], e.args[1]);
}

/// Ordering constraints: edge i -> j (i before j in the source) when the two
/// statements touch a common variable that one of them writes.
DirectedGraph block_dag(const std::vector<Stmt>& body) {
  std::vector<std::vector<std::string>> writes, reads;
  for (const Stmt& s : body) {
    writes.push_back(written_variables(s));
    reads.push_back(read_variables(s));
  }
  std::vector<Edge> edges;
  for (std::size_t j = 0; j < body.size(); ++j) {
    for (std::size_t i = 0; i < j; ++i) {
      const bool ordered = body[j].kind == Stmt::Kind::ret || intersects(writes[i], reads[j]) ||
                           intersects(reads[i], writes[j]) || intersects(writes[i], writes[j]);
      if (ordered) edges.push_back({static_cast<NodeId>(i), static_cast<NodeId>(j), 1.0});
    }
  }
  return DirectedGraph(body.size(), std::move(edges));
}

BigCount count_expr(const Expr& e, bool commutative) {
  BigCount c = swappable(e, commutative) ? 2 : 1;
  for (const Expr& a : e.args) c *= count_expr(a, commutative);
  return c;
}

BigCount count_block(const std::vector<Stmt>& body, bool commutative);

BigCount count_stmt(const Stmt& s, bool commutative) {
  return count_expr(s.value, commutative) * count_block(s.then_body, commutative) *
         count_block(s.else_body, commutative);
}

BigCount count_block(const std::vector<Stmt>& body, bool commutative) {
  if (body.empty()) return 1;
  BigCount c = count_topological_sorts(block_dag(body));
  for (const Stmt& s : body) c *= count_stmt(s, commutative);
  return c;
}

std::vector<Expr> expr_variants(const Expr& e, bool commutative) {
  // Cartesian product of argument variants, then the optional swap.
  std::vector<Expr> out{e};
  for (std::size_t i = 0; i < e.args.size(); ++i) {
    const auto arg_variants = expr_variants(e.args[i], commutative);
    std::vector<Expr> next;
    for (const Expr& partial : out) {
      for (const Expr& v : arg_variants) {
        Expr x = partial;
        x.args[i] = v;
        next.push_back(std::move(x));
      }
    }
    out = std::move(next);
  }
  if (swappable(e, commutative)) {
    const std::size_t n = out.size();
    for (std::size_t i = 0; i < n; ++i) {
      Expr x = out[i];
      std::swap(x.args[0], x.args[1]);
      out.push_back(std::move(x));
    }
  }
  return out;
}

std::vector<std::vector<Stmt>> block_variants(const std::vector<Stmt>& body, bool commutative);

std::vector<Stmt> stmt_variants(const Stmt& s, bool commutative) {
  std::vector<Stmt> out;
  const auto values = expr_variants(s.value, commutative);
  const auto thens = block_variants(s.then_body, commutative);
  const auto elses = block_variants(s.else_body, commutative);
  for (const Expr& v : values) {
    for (const auto& t : thens) {
      for (const auto& e : elses) {
        Stmt x = s;
        x.value = v;
        x.then_body = t;
        x.else_body = e;
        out.push_back(std::move(x));
      }
    }
  }
  return out;
}

std::vector<std::vector<Stmt>> block_variants(const std::vector<Stmt>& body, bool commutative) {
  if (body.empty()) return {{}};
  const DirectedGraph dag = block_dag(body);
  const std::size_t n = body.size();

  // Linear extensions by backtracking, lexicographic in source index so the
  // original order comes first.
  std::vector<std::vector<std::size_t>> orders;
  std::vector<std::size_t> order;
  std::vector<int> missing(n, 0);
  for (const Edge& e : dag.edges()) ++missing[e.dst];
  std::vector<bool> used(n, false);
  std::function<void()> extend = [&] {
    if (order.size() == n) {
      orders.push_back(order);
      return;
    }
    for (std::size_t v = 0; v < n; ++v) {
      if (used[v] || missing[v] != 0) continue;
      used[v] = true;
      order.push_back(v);
      for (auto idx : dag.out_edges(static_cast<NodeId>(v))) --missing[dag.edges()[idx].dst];
      extend();
      for (auto idx : dag.out_edges(static_cast<NodeId>(v))) ++missing[dag.edges()[idx].dst];
      order.pop_back();
      used[v] = false;
    }
  };
  extend();

  std::vector<std::vector<Stmt>> per_stmt;
  for (const Stmt& s : body) per_stmt.push_back(stmt_variants(s, commutative));

  std::vector<std::vector<Stmt>> out;
  for (const auto& ord : orders) {
    std::vector<std::vector<Stmt>> partial{{}};
    for (std::size_t idx : ord) {
      std::vector<std::vector<Stmt>> next;
      for (const auto& prefix : partial) {
        for (const Stmt& v : per_stmt[idx]) {
          auto x = prefix;
          x.push_back(v);
          next.push_back(std::move(x));
        }
      }
      partial = std::move(next);
    }
    for (auto& b : partial) out.push_back(std::move(b));
  }
  return out;
}

}  // namespace

BigCount count_reorderings(const MiniProgram& p, bool commutative) { return count_block(p.body, commutative); }

Reorderings enumerate_reorderings(const MiniProgram& p, const ReorderOptions& options) {
  Reorderings r;
  r.count = count_reorderings(p, options.commutative);
  if (r.count > BigCount(options.limit)) {
    r.truncated = true;
    return r;
  }
  for (auto& body : block_variants(p.body, options.commutative)) {
    MiniProgram x = p;
    x.body = std::move(body);
    r.programs.push_back(std::move(x));
  }
  return r;
}

}  // namespace dirpe
