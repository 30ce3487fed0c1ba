// SPDX-License-Identifier: Apache-2.0
#include "dirpe/core/graph.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <numeric>
#include <queue>
#include <string>
#include <utility>

#include "dirpe/core/error.hpp"

namespace dirpe {

DirectedGraph::DirectedGraph(std::size_t n) : n_(n) { build_index(); }

DirectedGraph::DirectedGraph(std::size_t n, std::vector<Edge> edges, Labels node_labels,
                             Labels edge_labels)
    : n_(n), node_labels_(std::move(node_labels)) {
  if (n > std::numeric_limits<NodeId>::max()) throw InvalidGraph("node count exceeds 2^32");
  if (node_labels_ && node_labels_->size() != n) {
    throw InvalidGraph("node_labels has " + std::to_string(node_labels_->size()) +
                       " entries for " + std::to_string(n) + " nodes");
  }
  if (edge_labels && edge_labels->size() != edges.size()) {
    throw InvalidGraph("edge_labels size does not match the edge count");
  }
  for (const Edge& e : edges) {
    if (e.src >= n || e.dst >= n) {
      throw InvalidGraph("edge (" + std::to_string(e.src) + ", " + std::to_string(e.dst) +
                         ") out of range for n=" + std::to_string(n));
    }
    if (!(e.weight > 0.0)) {
      throw InvalidGraph("edge (" + std::to_string(e.src) + ", " + std::to_string(e.dst) +
                         ") has non-positive weight");
    }
  }

  std::vector<std::size_t> order(edges.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return std::pair(edges[a].src, edges[a].dst) < std::pair(edges[b].src, edges[b].dst);
  });
  edges_.reserve(edges.size());
  if (edge_labels) edge_labels_.emplace().reserve(edges.size());
  for (std::size_t i : order) {
    if (!edges_.empty() && edges_.back().src == edges[i].src && edges_.back().dst == edges[i].dst) {
      throw InvalidGraph("duplicate edge (" + std::to_string(edges[i].src) + ", " +
                         std::to_string(edges[i].dst) + ")");
    }
    edges_.push_back(edges[i]);
    if (edge_labels) edge_labels_->push_back((*edge_labels)[i]);
  }
  build_index();
}

void DirectedGraph::build_index() {
  out_offsets_.assign(n_ + 1, 0);
  in_offsets_.assign(n_ + 1, 0);
  for (const Edge& e : edges_) {
    ++out_offsets_[e.src + 1];
    ++in_offsets_[e.dst + 1];
  }
  std::partial_sum(out_offsets_.begin(), out_offsets_.end(), out_offsets_.begin());
  std::partial_sum(in_offsets_.begin(), in_offsets_.end(), in_offsets_.begin());
  out_index_.resize(edges_.size());
  in_index_.resize(edges_.size());
  std::vector<std::uint32_t> out_fill(out_offsets_.begin(), out_offsets_.end() - 1);
  std::vector<std::uint32_t> in_fill(in_offsets_.begin(), in_offsets_.end() - 1);
  for (std::uint32_t i = 0; i < edges_.size(); ++i) {
    out_index_[out_fill[edges_[i].src]++] = i;
    in_index_[in_fill[edges_[i].dst]++] = i;
  }
}

std::span<const std::uint32_t> DirectedGraph::out_edges(NodeId node) const {
  return std::span(out_index_).subspan(out_offsets_[node], out_offsets_[node + 1] - out_offsets_[node]);
}

std::span<const std::uint32_t> DirectedGraph::in_edges(NodeId node) const {
  return std::span(in_index_).subspan(in_offsets_[node], in_offsets_[node + 1] - in_offsets_[node]);
}

std::optional<std::size_t> DirectedGraph::find_edge(NodeId src, NodeId dst) const {
  if (src >= n_ || dst >= n_) return std::nullopt;
  // Out-edges of a node are contiguous and sorted by dst.
  const auto out = out_edges(src);
  const auto it = std::lower_bound(out.begin(), out.end(), dst,
                                   [&](std::uint32_t idx, NodeId d) { return edges_[idx].dst < d; });
  if (it != out.end() && edges_[*it].dst == dst) return *it;
  return std::nullopt;
}

double DirectedGraph::weight(NodeId src, NodeId dst) const {
  const auto idx = find_edge(src, dst);
  return idx ? edges_[*idx].weight : 0.0;
}

bool DirectedGraph::is_weighted() const noexcept {
  return std::any_of(edges_.begin(), edges_.end(), [](const Edge& e) { return e.weight != 1.0; });
}

DirectedGraph DirectedGraph::permuted(std::span<const std::size_t> perm) const {
  if (perm.size() != n_) throw InvalidArgument("permutation size does not match node count");
  std::vector<bool> seen(n_, false);
  for (std::size_t p : perm) {
    if (p >= n_ || seen[p]) throw InvalidArgument("not a permutation");
    seen[p] = true;
  }
  std::vector<Edge> edges;
  edges.reserve(edges_.size());
  for (const Edge& e : edges_) {
    edges.push_back({static_cast<NodeId>(perm[e.src]), static_cast<NodeId>(perm[e.dst]), e.weight});
  }
  Labels nodes;
  if (node_labels_) {
    nodes.emplace(n_);
    for (std::size_t v = 0; v < n_; ++v) (*nodes)[perm[v]] = (*node_labels_)[v];
  }
  return DirectedGraph(n_, std::move(edges), std::move(nodes), edge_labels_);
}

DirectedGraph symmetrize(const DirectedGraph& g) {
  const bool weighted = g.is_weighted();
  std::map<std::pair<NodeId, NodeId>, double> sym;
  for (const Edge& e : g.edges()) {
    if (weighted) {
      sym[{e.src, e.dst}] += e.weight / 2.0;
      sym[{e.dst, e.src}] += e.weight / 2.0;
    } else {
      sym[{e.src, e.dst}] = 1.0;
      sym[{e.dst, e.src}] = 1.0;
    }
  }
  std::vector<Edge> edges;
  edges.reserve(sym.size());
  for (const auto& [key, w] : sym) edges.push_back({key.first, key.second, w});
  return DirectedGraph(g.num_nodes(), std::move(edges), g.node_labels());
}

DegreeBundle degrees(const DirectedGraph& g) {
  const std::size_t n = g.num_nodes();
  DegreeBundle d{std::vector<double>(n, 0.0), std::vector<double>(n, 0.0), std::vector<double>(n, 0.0)};
  for (const Edge& e : g.edges()) {
    d.out[e.src] += e.weight;
    d.in[e.dst] += e.weight;
  }
  const DirectedGraph s = symmetrize(g);
  for (const Edge& e : s.edges()) d.sym[e.src] += e.weight;
  return d;
}

std::size_t purely_directed_count(const DirectedGraph& g) {
  std::size_t count = 0;
  for (const Edge& e : g.edges()) {
    if (e.src != e.dst && !g.has_edge(e.dst, e.src)) ++count;
  }
  return count;
}

bool is_acyclic(const DirectedGraph& g) {
  const std::size_t n = g.num_nodes();
  std::vector<std::size_t> indeg(n, 0);
  for (const Edge& e : g.edges()) {
    if (e.src != e.dst) ++indeg[e.dst];
  }
  std::vector<NodeId> stack;
  for (NodeId v = 0; v < n; ++v) {
    if (indeg[v] == 0) stack.push_back(v);
  }
  std::size_t visited = 0;
  while (!stack.empty()) {
    const NodeId v = stack.back();
    stack.pop_back();
    ++visited;
    for (std::uint32_t idx : g.out_edges(v)) {
      const Edge& e = g.edges()[idx];
      if (e.dst != v && --indeg[e.dst] == 0) stack.push_back(e.dst);
    }
  }
  return visited == n;
}

std::vector<std::size_t> weak_components(const DirectedGraph& g) {
  const std::size_t n = g.num_nodes();
  constexpr auto kUnset = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> comp(n, kUnset);
  std::vector<NodeId> stack;
  for (NodeId root = 0; root < n; ++root) {
    if (comp[root] != kUnset) continue;
    comp[root] = root;
    stack.push_back(root);
    while (!stack.empty()) {
      const NodeId v = stack.back();
      stack.pop_back();
      auto visit = [&](NodeId w) {
        if (comp[w] == kUnset) {
          comp[w] = root;
          stack.push_back(w);
        }
      };
      for (std::uint32_t idx : g.out_edges(v)) visit(g.edges()[idx].dst);
      for (std::uint32_t idx : g.in_edges(v)) visit(g.edges()[idx].src);
    }
  }
  return comp;
}

DirectedGraph induced_subgraph(const DirectedGraph& g, std::span<const NodeId> nodes) {
  constexpr auto kAbsent = std::numeric_limits<NodeId>::max();
  std::vector<NodeId> remap(g.num_nodes(), kAbsent);
  for (std::size_t i = 0; i < nodes.size(); ++i) remap[nodes[i]] = static_cast<NodeId>(i);
  std::vector<Edge> edges;
  Labels edge_labels;
  if (g.edge_labels()) edge_labels.emplace();
  for (std::size_t i = 0; i < g.num_edges(); ++i) {
    const Edge& e = g.edges()[i];
    if (remap[e.src] == kAbsent || remap[e.dst] == kAbsent) continue;
    edges.push_back({remap[e.src], remap[e.dst], e.weight});
    if (edge_labels) edge_labels->push_back((*g.edge_labels())[i]);
  }
  Labels node_labels;
  if (g.node_labels()) {
    node_labels.emplace();
    for (NodeId v : nodes) node_labels->push_back((*g.node_labels())[v]);
  }
  return DirectedGraph(nodes.size(), std::move(edges), std::move(node_labels), std::move(edge_labels));
}

DirectedGraph largest_weak_component(const DirectedGraph& g) {
  if (g.num_nodes() == 0) return g;
  const auto comp = weak_components(g);
  std::vector<std::size_t> size(g.num_nodes(), 0);
  for (std::size_t c : comp) ++size[c];
  // Component ids are their smallest member, so the first maximum wins ties.
  const auto best = static_cast<std::size_t>(std::max_element(size.begin(), size.end()) - size.begin());
  std::vector<NodeId> nodes;
  for (NodeId v = 0; v < g.num_nodes(); ++v) {
    if (comp[v] == best) nodes.push_back(v);
  }
  return induced_subgraph(g, nodes);
}

}  // namespace dirpe
