// SPDX-License-Identifier: Apache-2.0
#include "dirpe/dataflow/flow_graph.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <set>
#include <stdexcept>

#include <openssl/evp.h>

#include "dirpe/core/canonical.hpp"
#include "dirpe/core/error.hpp"

namespace dirpe {
namespace {

struct Env {
  /// Write-occurrence nodes that may reach the current point.
  std::map<std::string, std::vector<NodeId>> reaching;
  /// Variables assigned on every path to the current point.
  std::set<std::string> assigned;
};

class Builder {
 public:
  Builder(const MiniProgram& p, bool mask) : p_(p), mask_(mask) {}

  FlowGraph run() {
    const NodeId root = add_node("FunctionDef");
    link(root, add_node(token(p_.name)), edge_kind::field);
    Env env;
    for (std::size_t i = 0; i < p_.params.size(); ++i) {
      const NodeId param = add_node("Param");
      link(root, param, operand_label(i, false));
      const NodeId var = add_node(token(p_.params[i]));
      link(param, var, edge_kind::field);
      write_chain_[var] = {};
      env.reaching[p_.params[i]] = {var};
      env.assigned.insert(p_.params[i]);
    }
    const NodeId body = add_node("Body");
    link(root, body, edge_kind::field);
    block(p_.body, body, root, env);

    std::vector<Edge> edges;
    std::vector<std::string> labels;
    for (const auto& [pair, label] : edges_) {
      edges.push_back({pair.first, pair.second, 1.0});
      labels.push_back(label);
    }
    return FlowGraph{DirectedGraph(labels_.size(), std::move(edges), labels_, std::move(labels))};
  }

 private:
  const MiniProgram& p_;
  bool mask_;
  std::vector<std::string> labels_;
  std::map<std::pair<NodeId, NodeId>, std::string> edges_;
  /// Enclosing statement nodes (outermost first) of each write occurrence.
  std::map<NodeId, std::vector<NodeId>> write_chain_;
  std::vector<NodeId> stmt_stack_;
  std::set<NodeId> has_block_pred_;
  /// Variable reads of the assignment currently being built.
  std::vector<NodeId>* reads_ = nullptr;

  std::string token(const std::string& s) const { return mask_ && s == p_.name ? std::string(kMaskToken) : s; }

  static std::string operand_label(std::size_t index, bool commutative) {
    if (commutative || index == 0) return std::string(edge_kind::input);
    return std::string(edge_kind::input) + ":" + std::to_string(index + 1);
  }

  NodeId add_node(std::string label) {
    labels_.push_back(std::move(label));
    return static_cast<NodeId>(labels_.size() - 1);
  }

  void link(NodeId u, NodeId v, std::string_view label) {
    const auto [it, inserted] = edges_.emplace(std::make_pair(u, v), std::string(label));
    if (!inserted && it->second != label) {
      throw std::logic_error("flow graph edge " + std::to_string(u) + "->" + std::to_string(v) +
                             " has two kinds");
    }
  }

  /// CFG_NEXT between the two statements of a common block that enclose
  /// `write` and the current position.
  void depend_on(NodeId write) {
    const auto& chain = write_chain_.at(write);
    std::size_t d = 0;
    while (d < chain.size() && d < stmt_stack_.size() && chain[d] == stmt_stack_[d]) ++d;
    if (d < chain.size() && d < stmt_stack_.size()) {
      link(chain[d], stmt_stack_[d], edge_kind::cfg_next);
      has_block_pred_.insert(stmt_stack_[d]);
    }
  }

  NodeId expr(const Expr& e, Env& env) {
    switch (e.kind) {
      case Expr::Kind::constant:
        return add_node(e.text);
      case Expr::Kind::variable: {
        if (env.assigned.count(e.text) == 0) {
          throw UseBeforeAssignment("'" + e.text + "' may be read before assignment at " +
                                    std::to_string(e.span.line) + ":" + std::to_string(e.span.column));
        }
        const NodeId v = add_node(token(e.text));
        for (NodeId w : env.reaching.at(e.text)) {
          link(v, w, edge_kind::last_write);
          depend_on(w);
        }
        if (reads_ != nullptr) reads_->push_back(v);
        return v;
      }
      case Expr::Kind::unary: {
        const NodeId op = add_node(e.text == "-" ? "u-" : e.text);
        link(op, expr(e.args[0], env), edge_kind::input);
        return op;
      }
      case Expr::Kind::binary: {
        const NodeId op = add_node(e.text);
        const bool comm = is_commutative(e.text);
        for (std::size_t i = 0; i < e.args.size(); ++i) link(op, expr(e.args[i], env), operand_label(i, comm));
        return op;
      }
      case Expr::Kind::call: {
        const NodeId call = add_node(e.method ? "." + token(e.text) : token(e.text));
        for (std::size_t i = 0; i < e.args.size(); ++i) link(call, expr(e.args[i], env), operand_label(i, false));
        if (!e.method && e.text == p_.name) link(call, FlowGraph::root, edge_kind::calls);
        return call;
      }
    }
    throw std::logic_error("unknown expression kind");
  }

  NodeId statement(const Stmt& s, Env& env) {
    switch (s.kind) {
      case Stmt::Kind::assign: {
        const NodeId node = add_node("Assign");
        stmt_stack_.push_back(node);
        std::vector<NodeId> reads;
        reads_ = &reads;
        const NodeId value = expr(s.value, env);
        reads_ = nullptr;
        link(node, value, edge_kind::input);
        const NodeId target = add_node(token(s.target));
        link(node, target, edge_kind::field);
        for (NodeId r : reads) link(target, r, edge_kind::calculated_from);
        if (const auto it = env.reaching.find(s.target); it != env.reaching.end()) {
          for (NodeId w : it->second) link(target, w, edge_kind::last_write);
        }
        write_chain_[target] = stmt_stack_;
        env.reaching[s.target] = {target};
        env.assigned.insert(s.target);
        stmt_stack_.pop_back();
        return node;
      }
      case Stmt::Kind::ret: {
        const NodeId node = add_node("Return");
        stmt_stack_.push_back(node);
        link(node, expr(s.value, env), edge_kind::input);
        stmt_stack_.pop_back();
        return node;
      }
      case Stmt::Kind::branch: {
        const NodeId node = add_node("If");
        stmt_stack_.push_back(node);
        link(node, expr(s.value, env), edge_kind::input);
        Env then_env = env;
        const NodeId then_block = add_node("Then");
        link(node, then_block, edge_kind::field);
        block(s.then_body, then_block, node, then_env);
        Env else_env = env;
        if (!s.else_body.empty()) {
          const NodeId else_block = add_node("Else");
          link(node, else_block, edge_kind::field);
          block(s.else_body, else_block, node, else_env);
        }
        stmt_stack_.pop_back();
        Env merged;
        for (const Env* branch : {&then_env, &else_env}) {
          for (const auto& [var, writes] : branch->reaching) {
            auto& dst = merged.reaching[var];
            dst.insert(dst.end(), writes.begin(), writes.end());
          }
        }
        for (auto& [var, writes] : merged.reaching) {
          std::sort(writes.begin(), writes.end());
          writes.erase(std::unique(writes.begin(), writes.end()), writes.end());
        }
        std::set_intersection(then_env.assigned.begin(), then_env.assigned.end(), else_env.assigned.begin(),
                              else_env.assigned.end(), std::inserter(merged.assigned, merged.assigned.end()));
        env = std::move(merged);
        return node;
      }
    }
    throw std::logic_error("unknown statement kind");
  }

  void block(const std::vector<Stmt>& body, NodeId block_node, NodeId entry_from, Env& env) {
    std::vector<NodeId> nodes;
    for (const Stmt& s : body) {
      const NodeId node = statement(s, env);
      link(block_node, node, edge_kind::field);
      nodes.push_back(node);
    }
    for (NodeId node : nodes) {
      if (has_block_pred_.count(node) == 0) link(entry_from, node, edge_kind::cfg_next);
    }
  }
};

}  // namespace

FlowGraph build_graph(const MiniProgram& p, bool mask_name) { return Builder(p, mask_name).run(); }

std::string flow_digest(const FlowGraph& g) {
  const std::string form = canonical_form(g.graph, CanonicalOptions{true, true, false});
  std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
  unsigned int len = 0;
  if (EVP_Digest(form.data(), form.size(), md.data(), &len, EVP_sha256(), nullptr) != 1) {
    throw NumericalError("SHA-256 digest failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string hex;
  for (unsigned int i = 0; i < len; ++i) {
    hex += kHex[md[i] >> 4];
    hex += kHex[md[i] & 15];
  }
  return hex;
}

}  // namespace dirpe
