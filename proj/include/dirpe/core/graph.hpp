// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace dirpe {

using NodeId = std::uint32_t;

struct Edge {
  NodeId src = 0;
  NodeId dst = 0;
  double weight = 1.0;

  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Node and edge features are stored as string tokens.
using Labels = std::optional<std::vector<std::string>>;

/// Immutable directed graph without parallel edges.
///
/// Edges are kept sorted by (src, dst); edge labels follow the same order.
/// Self-loops are allowed. Construction validates that node indices are in
/// range, that no (src, dst) pair repeats and that all weights are positive.
class DirectedGraph {
 public:
  DirectedGraph() = default;

  /// Graph with `n` nodes and no edges.
  explicit DirectedGraph(std::size_t n);

  /// Throws InvalidGraph when an invariant is violated.
  DirectedGraph(std::size_t n, std::vector<Edge> edges, Labels node_labels = std::nullopt,
                Labels edge_labels = std::nullopt);

  std::size_t num_nodes() const noexcept { return n_; }
  std::size_t num_edges() const noexcept { return edges_.size(); }

  std::span<const Edge> edges() const& noexcept { return edges_; }
  std::span<const Edge> edges() const&& = delete;  // would dangle
  const Labels& node_labels() const noexcept { return node_labels_; }
  const Labels& edge_labels() const noexcept { return edge_labels_; }

  /// Indices into edges() of the edges leaving / entering `node`.
  std::span<const std::uint32_t> out_edges(NodeId node) const;
  std::span<const std::uint32_t> in_edges(NodeId node) const;

  std::size_t out_degree(NodeId node) const { return out_edges(node).size(); }
  std::size_t in_degree(NodeId node) const { return in_edges(node).size(); }

  bool has_edge(NodeId src, NodeId dst) const { return find_edge(src, dst).has_value(); }
  /// Weight of (src, dst), or 0 when absent.
  double weight(NodeId src, NodeId dst) const;
  std::optional<std::size_t> find_edge(NodeId src, NodeId dst) const;

  /// True when some edge has weight != 1.
  bool is_weighted() const noexcept;

  /// Relabel nodes: node v of this graph becomes node perm[v].
  DirectedGraph permuted(std::span<const std::size_t> perm) const;

  friend bool operator==(const DirectedGraph& a, const DirectedGraph& b) {
    return a.n_ == b.n_ && a.edges_ == b.edges_ && a.node_labels_ == b.node_labels_ &&
           a.edge_labels_ == b.edge_labels_;
  }

 private:
  void build_index();

  std::size_t n_ = 0;
  std::vector<Edge> edges_;
  Labels node_labels_;
  Labels edge_labels_;
  std::vector<std::uint32_t> out_offsets_, out_index_;
  std::vector<std::uint32_t> in_offsets_, in_index_;
};

struct DegreeBundle {
  std::vector<double> in;
  std::vector<double> out;
  /// Degrees of the symmetrized graph.
  std::vector<double> sym;
};

/// A ∨ Aᵀ for unweighted graphs; (A + Aᵀ)/2 when any weight differs from 1.
/// Node labels are kept, edge labels dropped.
DirectedGraph symmetrize(const DirectedGraph& g);

DegreeBundle degrees(const DirectedGraph& g);

/// Number of edges (u, v) whose reverse (v, u) is absent. Self-loops are
/// their own reverse and never count.
std::size_t purely_directed_count(const DirectedGraph& g);

/// True when the graph has no directed cycle. Self-loops are ignored.
bool is_acyclic(const DirectedGraph& g);

/// Weakly connected component id per node, numbered by smallest member.
std::vector<std::size_t> weak_components(const DirectedGraph& g);

/// Induced subgraph on the largest weakly connected component, nodes
/// relabeled to [0, n') in their original relative order. Ties between
/// equally large components go to the one containing the smallest node.
DirectedGraph largest_weak_component(const DirectedGraph& g);

/// Induced subgraph on `nodes` (ascending order is preserved).
DirectedGraph induced_subgraph(const DirectedGraph& g, std::span<const NodeId> nodes);

}  // namespace dirpe
