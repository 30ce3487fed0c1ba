// SPDX-License-Identifier: Apache-2.0
#include <algorithm>
#include <numeric>
#include <vector>

#include <gtest/gtest.h>

#include "dirpe/core/canonical.hpp"
#include "dirpe/core/error.hpp"
#include "dirpe/core/generators.hpp"
#include "dirpe/core/graph.hpp"
#include "dirpe/core/graph_io.hpp"
#include "dirpe/core/rng.hpp"
#include "dirpe/core/topo_sort.hpp"

namespace dirpe {
namespace {

DirectedGraph make(std::size_t n, std::vector<std::pair<NodeId, NodeId>> pairs) {
  std::vector<Edge> edges;
  for (auto [u, v] : pairs) edges.push_back({u, v, 1.0});
  return DirectedGraph(n, std::move(edges));
}

/// Isomorphism by trying every bijection; node labels must match too.
bool brute_force_isomorphic(const DirectedGraph& a, const DirectedGraph& b) {
  if (a.num_nodes() != b.num_nodes() || a.num_edges() != b.num_edges()) return false;
  std::vector<std::size_t> perm(a.num_nodes());
  std::iota(perm.begin(), perm.end(), 0);
  do {
    if (a.permuted(perm) == b) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

DirectedGraph with_labels(const DirectedGraph& g, Rng& rng, std::size_t alphabet) {
  std::vector<std::string> labels(g.num_nodes());
  for (auto& l : labels) l = std::string(1, static_cast<char>('a' + rng.uniform_below(alphabet)));
  return DirectedGraph(g.num_nodes(), {g.edges().begin(), g.edges().end()}, labels);
}

// Brute force: try every permutation.
std::uint64_t brute_force_topo_sorts(const DirectedGraph& g) {
  std::vector<std::size_t> order(g.num_nodes());
  std::iota(order.begin(), order.end(), 0);
  std::uint64_t count = 0;
  do {
    std::vector<std::size_t> pos(order.size());
    for (std::size_t i = 0; i < order.size(); ++i) pos[order[i]] = i;
    bool ok = true;
    for (const Edge& e : g.edges()) {
      if (e.src != e.dst && pos[e.src] > pos[e.dst]) {
        ok = false;
        break;
      }
    }
    count += ok;
  } while (std::next_permutation(order.begin(), order.end()));
  return count;
}

TEST(Graph, ValidationRejectsBadInput) {
  EXPECT_THROW(make(2, {{0, 2}}), InvalidGraph);
  EXPECT_THROW(make(2, {{0, 1}, {0, 1}}), InvalidGraph);
  EXPECT_THROW(DirectedGraph(2, {{0, 1, 0.0}}), InvalidGraph);
  EXPECT_THROW(DirectedGraph(2, {{0, 1, -1.0}}), InvalidGraph);
  EXPECT_THROW(DirectedGraph(2, {}, std::vector<std::string>{"a"}), InvalidGraph);
}

TEST(Graph, EdgesSortedWithLabels) {
  DirectedGraph g(3, {{2, 0, 1.0}, {0, 2, 1.0}, {0, 1, 1.0}}, std::nullopt,
                  std::vector<std::string>{"c", "b", "a"});
  ASSERT_EQ(g.num_edges(), 3u);
  EXPECT_EQ(g.edges()[0], (Edge{0, 1, 1.0}));
  EXPECT_EQ(g.edges()[2], (Edge{2, 0, 1.0}));
  EXPECT_EQ(*g.edge_labels(), (std::vector<std::string>{"a", "b", "c"}));
  EXPECT_TRUE(g.has_edge(0, 2));
  EXPECT_FALSE(g.has_edge(1, 0));
  EXPECT_EQ(g.out_degree(0), 2u);
  EXPECT_EQ(g.in_degree(0), 1u);
}

TEST(Symmetrize, Basics) {
  EXPECT_EQ(symmetrize(make(2, {{0, 1}})), make(2, {{0, 1}, {1, 0}}));
  const auto tri = make(3, {{0, 1}, {1, 0}, {1, 2}, {2, 1}, {0, 2}, {2, 0}});
  EXPECT_EQ(symmetrize(tri), tri);
  const auto w = symmetrize(DirectedGraph(2, {{0, 1, 2.0}}));
  EXPECT_EQ(w, DirectedGraph(2, {{0, 1, 1.0}, {1, 0, 1.0}}));
}

TEST(Symmetrize, IdempotentAndNoPurelyDirected) {
  Rng rng(7);
  for (int t = 0; t < 20; ++t) {
    const auto g = erdos_renyi(12, 1.5, t % 2 == 0, rng);
    const auto s = symmetrize(g);
    EXPECT_EQ(symmetrize(s), s);
    EXPECT_EQ(purely_directed_count(s), 0u);
  }
}

TEST(Degrees, Examples) {
  auto d = degrees(make(3, {{0, 1}, {1, 2}}));
  EXPECT_EQ(d.in, (std::vector<double>{0, 1, 1}));
  EXPECT_EQ(d.out, (std::vector<double>{1, 1, 0}));
  EXPECT_EQ(d.sym, (std::vector<double>{1, 2, 1}));
  d = degrees(DirectedGraph(1));
  EXPECT_EQ(d.sym, (std::vector<double>{0}));
  d = degrees(make_topology(TopologyName::circle, 4));
  EXPECT_EQ(d.in, (std::vector<double>{1, 1, 1, 1}));
  EXPECT_EQ(d.sym, (std::vector<double>{2, 2, 2, 2}));
}

TEST(Degrees, SumsMatchTotalWeight) {
  DirectedGraph g(3, {{0, 1, 0.5}, {1, 2, 2.0}, {2, 0, 1.5}, {1, 1, 3.0}});
  const auto d = degrees(g);
  const double total = 7.0;
  EXPECT_DOUBLE_EQ(std::accumulate(d.in.begin(), d.in.end(), 0.0), total);
  EXPECT_DOUBLE_EQ(std::accumulate(d.out.begin(), d.out.end(), 0.0), total);
}

TEST(PurelyDirected, Examples) {
  EXPECT_EQ(purely_directed_count(make(3, {{0, 1}, {1, 2}})), 2u);
  EXPECT_EQ(purely_directed_count(make(3, {{0, 1}, {1, 0}, {1, 2}})), 1u);
  EXPECT_EQ(purely_directed_count(make(2, {{0, 0}, {0, 1}})), 1u);
}

TEST(Topology, Examples) {
  EXPECT_EQ(make_topology(TopologyName::sequence, 3), make(3, {{0, 1}, {1, 2}}));
  EXPECT_EQ(make_topology(TopologyName::fully_connected_dag, 3),
            make(3, {{0, 0}, {0, 1}, {0, 2}, {1, 1}, {1, 2}, {2, 2}}));
  const auto comp = weak_components(make_topology(TopologyName::disconnected_sequences, 5));
  EXPECT_EQ(comp, (std::vector<std::size_t>{0, 0, 2, 2, 2}));
  EXPECT_EQ(make_topology(TopologyName::binary_tree, 1).num_nodes(), 1u);
  EXPECT_THROW(make_topology(TopologyName::sequence, 1), InvalidArgument);
}

TEST(Topology, AllConstructibleAndNamed) {
  for (TopologyName t : all_topologies()) {
    EXPECT_EQ(parse_topology(topology_name(t)), t);
    for (std::size_t n = 2; n <= 20; ++n) EXPECT_EQ(make_topology(t, n).num_nodes(), n);
  }
  EXPECT_THROW(parse_topology("spiral"), InvalidArgument);
}

TEST(Topology, Trumpets) {
  // n = 10: a = 3, b = 7.
  EXPECT_TRUE(make_topology(TopologyName::trumpet_loop, 10).has_edge(7, 3));
  EXPECT_TRUE(make_topology(TopologyName::trumpet_forward, 10).has_edge(3, 7));
  const auto dag = make_topology(TopologyName::trumpet_dag, 10);
  EXPECT_TRUE(is_acyclic(dag));
  EXPECT_EQ(dag.num_edges(), 9u + 10u - 4u);
  const auto full = make_topology(TopologyName::trumpet_fully_connected, 10);
  EXPECT_TRUE(full.has_edge(6, 4));
  EXPECT_EQ(full.num_edges(), 9u + 20u - 4u);
  const auto mix = make_topology(TopologyName::mix_dag_fully_connected, 8);
  EXPECT_TRUE(mix.has_edge(5, 2));
  EXPECT_FALSE(mix.has_edge(6, 2));
}

TEST(LargestComponent, PreservesOrderAndLabels) {
  DirectedGraph g(5, {{0, 3, 1.0}, {3, 4, 1.0}, {1, 2, 1.0}},
                  std::vector<std::string>{"a", "b", "c", "d", "e"});
  const auto c = largest_weak_component(g);
  EXPECT_EQ(c.num_nodes(), 3u);
  EXPECT_EQ(*c.node_labels(), (std::vector<std::string>{"a", "d", "e"}));
  EXPECT_TRUE(c.has_edge(0, 1));
  EXPECT_TRUE(c.has_edge(1, 2));
}

TEST(Sampling, Deterministic) {
  const std::vector<double> degs{1.0, 1.5, 2.0};
  for (bool dag : {false, true}) {
    const auto a = sample_graph({16, 63}, degs, dag, 1234);
    const auto b = sample_graph({16, 63}, degs, dag, 1234);
    EXPECT_EQ(graph_to_string(a), graph_to_string(b));
  }
}

TEST(Sampling, DagsAreAcyclic) {
  const std::vector<double> degs{1.0, 1.5, 2.0, 2.5, 3.0};
  for (std::uint64_t s = 0; s < 200; ++s) {
    const auto g = sample_graph({4, 40}, degs, true, s);
    EXPECT_TRUE(is_acyclic(g));
    if (g.num_nodes() <= 20) {
      EXPECT_GE(count_topological_sorts(g), 1);
    }
  }
}

TEST(Sampling, MeanOutDegree) {
  for (bool dag : {false, true}) {
    Rng rng(99);
    double total = 0;
    const int reps = 20;
    for (int r = 0; r < reps; ++r) total += static_cast<double>(erdos_renyi(1000, 2.0, dag, rng).num_edges());
    EXPECT_NEAR(total / reps / 1000.0, 2.0, 0.2);
  }
}

TEST(Sampling, ExactSize) {
  const std::vector<double> degs{1.0, 1.5, 2.0};
  for (std::uint64_t s = 0; s < 20; ++s) {
    EXPECT_EQ(sample_graph_with_size(72 + s % 12, degs, s % 2, s).num_nodes(), 72 + s % 12);
  }
}

TEST(TopoSort, Examples) {
  EXPECT_EQ(count_topological_sorts(make_topology(TopologyName::sequence, 10)), 1);
  EXPECT_EQ(count_topological_sorts(DirectedGraph(4)), 24);
  EXPECT_EQ(count_topological_sorts(make(4, {{0, 1}, {0, 2}, {1, 3}, {2, 3}})), 2);
  EXPECT_THROW(count_topological_sorts(make_topology(TopologyName::circle, 4)), CyclicGraph);
  EXPECT_THROW(count_topological_sorts(DirectedGraph(25)), TooLarge);
  EXPECT_THROW(count_topological_sorts(DirectedGraph(13), 12), TooLarge);
  EXPECT_EQ(count_topological_sorts(DirectedGraph(13), 13), BigCount("6227020800"));
}

TEST(TopoSort, MatchesBruteForce) {
  Rng rng(2024);
  for (int t = 0; t < 60; ++t) {
    const std::size_t n = 1 + rng.uniform_below(8);
    const auto g = erdos_renyi(n, 0.5 + rng.uniform01() * 2.0, true, rng);
    EXPECT_EQ(count_topological_sorts(g), brute_force_topo_sorts(g));
  }
}

TEST(GraphIo, RoundTrip) {
  DirectedGraph g(3, {{1, 2, 0.5}, {0, 1, 1.0}}, std::vector<std::string>{"x", "y", "z"},
                  std::vector<std::string>{"e12", "e01"});
  const auto text = graph_to_string(g);
  EXPECT_EQ(text,
            R"({"edge_labels":["e01","e12"],"edges":[[0,1,1.0],[1,2,0.5]],"n":3,"node_labels":["x","y","z"]})");
  EXPECT_EQ(graph_from_string(text), g);
  EXPECT_THROW(graph_from_string("{\"n\":2,\"edges\":[[0,5]]}"), InvalidGraph);
  EXPECT_THROW(graph_from_string("not json"), InvalidGraph);
}

TEST(Canonical, InvariantUnderRelabeling) {
  Rng rng(77);
  for (int t = 0; t < 40; ++t) {
    const auto g = with_labels(erdos_renyi(2 + rng.uniform_below(30), 2.0, t % 2 == 0, rng), rng, 2);
    const auto h = g.permuted(rng.permutation(g.num_nodes()));
    EXPECT_EQ(canonical_form(g), canonical_form(h));
    EXPECT_TRUE(isomorphic(g, h));
  }
  // Vertex-transitive graphs need individualization, not just refinement.
  std::vector<std::pair<NodeId, NodeId>> two_triangles{{0, 1}, {1, 2}, {2, 0}, {3, 4}, {4, 5}, {5, 3}};
  std::vector<std::pair<NodeId, NodeId>> hexagon{{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 0}};
  EXPECT_NE(canonical_form(make(6, two_triangles)), canonical_form(make(6, hexagon)));
  EXPECT_FALSE(isomorphic(make(6, two_triangles), make(6, hexagon)));
}

TEST(Canonical, AgreesWithBruteForce) {
  Rng rng(78);
  int iso = 0;
  for (int t = 0; t < 300; ++t) {
    const std::size_t n = 1 + rng.uniform_below(6);
    const double d = 0.5 + rng.uniform01() * 1.5;
    const auto a = with_labels(erdos_renyi(n, d, false, rng), rng, 2);
    const auto b = t % 3 == 0 ? a.permuted(rng.permutation(n)) : with_labels(erdos_renyi(n, d, false, rng), rng, 2);
    const bool expected = brute_force_isomorphic(a, b);
    iso += expected;
    EXPECT_EQ(isomorphic(a, b), expected);
    EXPECT_EQ(canonical_form(a) == canonical_form(b), expected);
  }
  EXPECT_GT(iso, 100);
}

TEST(Canonical, AttributesAndBudget) {
  const DirectedGraph a(2, {{0, 1, 1.0}}, std::vector<std::string>{"x", "y"});
  const DirectedGraph b(2, {{0, 1, 1.0}}, std::vector<std::string>{"y", "x"});
  EXPECT_NE(canonical_form(a), canonical_form(b));
  EXPECT_FALSE(isomorphic(a, b));
  EXPECT_TRUE(isomorphic(a, b, false));
  EXPECT_EQ(canonical_form(a, {false, false, false}), canonical_form(b, {false, false, false}));
  const DirectedGraph w1(2, {{0, 1, 1.0}});
  const DirectedGraph w2(2, {{0, 1, 2.0}});
  EXPECT_EQ(canonical_form(w1), canonical_form(w2));
  EXPECT_NE(canonical_form(w1, {true, true, true}), canonical_form(w2, {true, true, true}));
  // Empty graph on 12 nodes: every branch looks alike.
  EXPECT_THROW(canonical_form(DirectedGraph(12, {}), {true, true, false, 1000}), TooLarge);
}

}  // namespace
}  // namespace dirpe
