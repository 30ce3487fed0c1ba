// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dirpe/core/graph.hpp"
#include "dirpe/core/rng.hpp"

namespace dirpe {

enum class TopologyName {
  sequence,
  undirected_sequence,
  reversed_sequence,
  circle,
  disconnected_sequences,
  binary_tree,
  reversed_binary_tree,
  trumpet_loop,
  trumpet_forward,
  trumpet_dag,
  trumpet_fully_connected,
  fully_connected_dag,
  mix_dag_fully_connected,
};

std::span<const TopologyName> all_topologies();
std::string_view topology_name(TopologyName t);
/// Throws InvalidArgument for unknown names.
TopologyName parse_topology(std::string_view name);

/// Deterministic example graph. Binary trees accept n >= 1, everything
/// else n >= 2.
///
/// Trumpets are a sequence with a = floor(3n/10), b = floor(7n/10):
///   trumpet_loop            adds b -> a
///   trumpet_forward         adds a -> b
///   trumpet_dag             all i -> j for a <= i < j <= b
///   trumpet_fully_connected all i <-> j for a <= i < j <= b
DirectedGraph make_topology(TopologyName name, std::size_t n);

/// Inclusive node-count range.
struct NodeRange {
  std::size_t lo = 2;
  std::size_t hi = 2;
};

/// Directed Erdős–Rényi graph with expected out-degree `avg_degree`.
/// General graphs use p = d/(n-1) over all ordered pairs u != v. DAGs use
/// p = 2d/(n-1) over pairs u < v followed by a random node relabeling.
DirectedGraph erdos_renyi(std::size_t n, double avg_degree, bool dag, Rng& rng);

/// Draws n uniformly from `range` and an average degree uniformly from
/// `avg_degrees`, samples, and keeps the largest weakly connected
/// component. Throws InvalidGraph when fewer than 2 nodes remain.
DirectedGraph sample_graph(NodeRange range, std::span<const double> avg_degrees, bool dag,
                           std::uint64_t seed);

/// Like sample_graph but the returned component has exactly `n` nodes.
/// Rejection sampling: after each miss the pre-extraction size is rescaled
/// by n / (component size), staying within [n, 8n]. Throws InvalidGraph
/// when the attempt budget runs out.
DirectedGraph sample_graph_with_size(std::size_t n, std::span<const double> avg_degrees, bool dag,
                                     std::uint64_t seed);

}  // namespace dirpe
