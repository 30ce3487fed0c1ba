// SPDX-License-Identifier: Apache-2.0
#include "dirpe/core/generators.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <set>
#include <utility>

#include "dirpe/core/error.hpp"

namespace dirpe {
namespace {

constexpr std::array kTopologies = {
    TopologyName::sequence,
    TopologyName::undirected_sequence,
    TopologyName::reversed_sequence,
    TopologyName::circle,
    TopologyName::disconnected_sequences,
    TopologyName::binary_tree,
    TopologyName::reversed_binary_tree,
    TopologyName::trumpet_loop,
    TopologyName::trumpet_forward,
    TopologyName::trumpet_dag,
    TopologyName::trumpet_fully_connected,
    TopologyName::fully_connected_dag,
    TopologyName::mix_dag_fully_connected,
};

constexpr std::array<std::string_view, kTopologies.size()> kTopologyNames = {
    "sequence",
    "undirected_sequence",
    "reversed_sequence",
    "circle",
    "disconnected_sequences",
    "binary_tree",
    "reversed_binary_tree",
    "trumpet_loop",
    "trumpet_forward",
    "trumpet_dag",
    "trumpet_fully_connected",
    "fully_connected_dag",
    "mix_dag_fully_connected",
};

using EdgeSet = std::set<std::pair<NodeId, NodeId>>;

void add_sequence(EdgeSet& e, std::size_t lo, std::size_t hi) {
  for (std::size_t i = lo; i + 1 < hi; ++i) e.emplace(i, i + 1);
}

DirectedGraph from_set(std::size_t n, const EdgeSet& set) {
  std::vector<Edge> edges;
  edges.reserve(set.size());
  for (auto [u, v] : set) edges.push_back({u, v, 1.0});
  return DirectedGraph(n, std::move(edges));
}

}  // namespace

std::span<const TopologyName> all_topologies() { return kTopologies; }

std::string_view topology_name(TopologyName t) {
  return kTopologyNames[static_cast<std::size_t>(t)];
}

TopologyName parse_topology(std::string_view name) {
  for (std::size_t i = 0; i < kTopologyNames.size(); ++i) {
    if (kTopologyNames[i] == name) return kTopologies[i];
  }
  throw InvalidArgument("unknown topology '" + std::string(name) + "'");
}

DirectedGraph make_topology(TopologyName name, std::size_t n) {
  const bool tree = name == TopologyName::binary_tree || name == TopologyName::reversed_binary_tree;
  if (n < (tree ? 1u : 2u)) {
    throw InvalidArgument(std::string(topology_name(name)) + " needs n >= " + (tree ? "1" : "2") +
                          ", got " + std::to_string(n));
  }
  EdgeSet e;
  const std::size_t a = 3 * n / 10;
  const std::size_t b = 7 * n / 10;
  switch (name) {
    case TopologyName::sequence:
      add_sequence(e, 0, n);
      break;
    case TopologyName::undirected_sequence:
      for (std::size_t i = 0; i + 1 < n; ++i) {
        e.emplace(i, i + 1);
        e.emplace(i + 1, i);
      }
      break;
    case TopologyName::reversed_sequence:
      for (std::size_t i = 0; i + 1 < n; ++i) e.emplace(i + 1, i);
      break;
    case TopologyName::circle:
      add_sequence(e, 0, n);
      e.emplace(n - 1, 0);
      break;
    case TopologyName::disconnected_sequences:
      add_sequence(e, 0, n / 2);
      add_sequence(e, n / 2, n);
      break;
    case TopologyName::binary_tree:
      for (std::size_t i = 1; i < n; ++i) e.emplace((i - 1) / 2, i);
      break;
    case TopologyName::reversed_binary_tree:
      for (std::size_t i = 1; i < n; ++i) e.emplace(i, (i - 1) / 2);
      break;
    case TopologyName::trumpet_loop:
      add_sequence(e, 0, n);
      e.emplace(b, a);
      break;
    case TopologyName::trumpet_forward:
      add_sequence(e, 0, n);
      if (a != b) e.emplace(a, b);
      break;
    case TopologyName::trumpet_dag:
      add_sequence(e, 0, n);
      for (std::size_t i = a; i <= b; ++i) {
        for (std::size_t j = i + 1; j <= b; ++j) e.emplace(i, j);
      }
      break;
    case TopologyName::trumpet_fully_connected:
      add_sequence(e, 0, n);
      for (std::size_t i = a; i <= b; ++i) {
        for (std::size_t j = i + 1; j <= b; ++j) {
          e.emplace(i, j);
          e.emplace(j, i);
        }
      }
      break;
    case TopologyName::fully_connected_dag:
    case TopologyName::mix_dag_fully_connected:
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) e.emplace(i, j);
      }
      if (name == TopologyName::mix_dag_fully_connected) {
        for (std::size_t i = n / 4; i < 3 * n / 4; ++i) {
          for (std::size_t j = i + 1; j < 3 * n / 4; ++j) e.emplace(j, i);
        }
      }
      break;
  }
  return from_set(n, e);
}

DirectedGraph erdos_renyi(std::size_t n, double avg_degree, bool dag, Rng& rng) {
  if (n == 0) throw InvalidArgument("erdos_renyi needs n >= 1");
  if (!(avg_degree > 0.0)) throw InvalidArgument("average degree must be positive");
  if (n == 1) return DirectedGraph(1);

  const double p = std::min(1.0, (dag ? 2.0 : 1.0) * avg_degree / static_cast<double>(n - 1));
  const std::uint64_t pairs = dag ? std::uint64_t{n} * (n - 1) / 2 : std::uint64_t{n} * (n - 1);

  // Geometric skipping over the linearized pair list keeps this O(n + m).
  std::vector<std::uint64_t> chosen;
  if (p >= 1.0) {
    chosen.resize(pairs);
    for (std::uint64_t i = 0; i < pairs; ++i) chosen[i] = i;
  } else {
    const double log_q = std::log1p(-p);
    std::uint64_t idx = 0;
    while (true) {
      const double u = 1.0 - rng.uniform01();  // (0, 1]
      const double skip = std::floor(std::log(u) / log_q);
      if (skip >= static_cast<double>(pairs - idx)) break;
      idx += static_cast<std::uint64_t>(skip);
      chosen.push_back(idx);
      if (++idx >= pairs) break;
    }
  }

  std::vector<Edge> edges;
  edges.reserve(chosen.size());
  if (dag) {
    // Row u of the upper triangle holds n-1-u pairs.
    std::uint64_t row_start = 0;
    std::size_t u = 0;
    for (std::uint64_t idx : chosen) {
      while (idx >= row_start + (n - 1 - u)) {
        row_start += n - 1 - u;
        ++u;
      }
      const std::size_t v = u + 1 + static_cast<std::size_t>(idx - row_start);
      edges.push_back({static_cast<NodeId>(u), static_cast<NodeId>(v), 1.0});
    }
    const auto perm = rng.permutation(n);
    for (Edge& e : edges) {
      e.src = static_cast<NodeId>(perm[e.src]);
      e.dst = static_cast<NodeId>(perm[e.dst]);
    }
  } else {
    for (std::uint64_t idx : chosen) {
      const auto u = static_cast<std::size_t>(idx / (n - 1));
      const auto r = static_cast<std::size_t>(idx % (n - 1));
      const std::size_t v = r < u ? r : r + 1;
      edges.push_back({static_cast<NodeId>(u), static_cast<NodeId>(v), 1.0});
    }
  }
  return DirectedGraph(n, std::move(edges));
}

namespace {

void check_sampling_args(std::span<const double> avg_degrees) {
  if (avg_degrees.empty()) throw InvalidArgument("avg_degrees must be nonempty");
  for (double d : avg_degrees) {
    if (!(d > 0.0)) throw InvalidArgument("avg_degrees must be positive");
  }
}

}  // namespace

DirectedGraph sample_graph(NodeRange range, std::span<const double> avg_degrees, bool dag,
                           std::uint64_t seed) {
  check_sampling_args(avg_degrees);
  if (range.lo == 0 || range.lo > range.hi) throw InvalidArgument("invalid node range");
  Rng rng(seed);
  const std::size_t n = static_cast<std::size_t>(rng.uniform_int(
      static_cast<std::int64_t>(range.lo), static_cast<std::int64_t>(range.hi)));
  const double d = avg_degrees[rng.uniform_below(avg_degrees.size())];
  DirectedGraph g = largest_weak_component(erdos_renyi(n, d, dag, rng));
  if (g.num_nodes() < 2) {
    throw InvalidGraph("largest component has " + std::to_string(g.num_nodes()) + " node(s)");
  }
  return g;
}

DirectedGraph sample_graph_with_size(std::size_t n, std::span<const double> avg_degrees, bool dag,
                                     std::uint64_t seed) {
  check_sampling_args(avg_degrees);
  if (n < 2) throw InvalidArgument("sample_graph_with_size needs n >= 2");
  constexpr int kMaxAttempts = 2000;
  Rng rng(seed);
  const double d = avg_degrees[rng.uniform_below(avg_degrees.size())];
  // The pre-extraction size follows the observed component fraction.
  std::size_t total = n;
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    DirectedGraph g = largest_weak_component(erdos_renyi(total, d, dag, rng));
    const std::size_t got = g.num_nodes();
    if (got == n) return g;
    const double ratio = static_cast<double>(n) / static_cast<double>(got);
    std::size_t next = static_cast<std::size_t>(std::llround(static_cast<double>(total) * ratio));
    if (got < n) next = std::max(next, total + 1);
    if (got > n) next = std::min(next, total - 1);
    total = std::clamp<std::size_t>(next, n, 8 * n);
  }
  throw InvalidGraph("no component of size " + std::to_string(n) + " within the attempt budget");
}

}  // namespace dirpe
