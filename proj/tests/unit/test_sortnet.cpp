// SPDX-License-Identifier: Apache-2.0
#include <algorithm>
#include <filesystem>
#include <numeric>
#include <sstream>

#include <gtest/gtest.h>

#include "dirpe/core/canonical.hpp"
#include "dirpe/core/error.hpp"
#include "dirpe/core/text_output.hpp"
#include "dirpe/core/topo_sort.hpp"
#include "dirpe/sortnet/dataset.hpp"
#include "dirpe/sortnet/network.hpp"

namespace dirpe {
namespace {

/// Reference check on integer inputs: every permutation of 0..p-1.
bool sorts_all_permutations(const ComparatorNetwork& c) {
  std::vector<int> perm(c.p);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    auto x = perm;
    for (auto [i, j] : c.comparators) {
      if (x[i] > x[j]) std::swap(x[i], x[j]);
    }
    if (!std::is_sorted(x.begin(), x.end())) return false;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return true;
}

std::uint64_t brute_force_topo_sorts(const DirectedGraph& g) {
  std::vector<std::size_t> order(g.num_nodes());
  std::iota(order.begin(), order.end(), 0);
  std::uint64_t count = 0;
  do {
    std::vector<std::size_t> pos(order.size());
    for (std::size_t i = 0; i < order.size(); ++i) pos[order[i]] = i;
    count += std::all_of(g.edges().begin(), g.edges().end(), [&](const Edge& e) { return pos[e.src] < pos[e.dst]; });
  } while (std::next_permutation(order.begin(), order.end()));
  return count;
}

TEST(Sortnet, CorrectnessExamples) {
  const auto three = make_network(3, {{0, 2}, {0, 1}, {1, 2}});
  EXPECT_TRUE(is_correct(three));
  EXPECT_FALSE(is_correct(reversed(three)));
  EXPECT_EQ(reversed(three).comparators, (std::vector<Comparator>{{1, 2}, {0, 1}, {0, 2}}));
  EXPECT_TRUE(is_correct(make_network(2, {{0, 1}})));
  EXPECT_FALSE(is_correct(make_network(2, {})));
  EXPECT_EQ(make_network(3, {{2, 0}}).comparators[0], (Comparator{0, 2}));
  EXPECT_THROW(make_network(3, {{1, 1}}), InvalidArgument);
  EXPECT_THROW(make_network(3, {{0, 3}}), InvalidArgument);
  EXPECT_THROW(is_correct(ComparatorNetwork{25, {}}), WireCountTooLarge);
}

TEST(Sortnet, ZeroOneCheckAgreesWithPermutations) {
  for (std::size_t p = 2; p <= 6; ++p) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const auto net = generate_network(p, seed);
      EXPECT_EQ(is_correct(net), sorts_all_permutations(net));
      const auto dropped = drop_last(net);
      EXPECT_EQ(is_correct(dropped), sorts_all_permutations(dropped));
      EXPECT_EQ(is_correct(reversed(net)), sorts_all_permutations(reversed(net)));
    }
  }
}

TEST(Sortnet, WideInputsUseSeveralBatches) {
  const auto net = batcher(13);
  EXPECT_TRUE(is_correct(net));
  auto broken = net;
  broken.comparators.erase(broken.comparators.begin() + 7);
  EXPECT_FALSE(is_correct(broken));
}

TEST(Sortnet, GeneratedNetworks) {
  std::size_t dropped_incorrect = 0, total = 0;
  for (std::size_t p = 2; p <= 11; ++p) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const auto net = generate_network(p, seed);
      EXPECT_TRUE(is_correct(net));
      EXPECT_LE(net.comparators.size(), kMaxComparators);
      for (std::size_t i = 0; i < net.comparators.size(); ++i) {
        EXPECT_LT(net.comparators[i].first, net.comparators[i].second);
        if (i > 0) {
          EXPECT_NE(net.comparators[i], net.comparators[i - 1]);
        }
      }
      dropped_incorrect += is_correct(drop_last(net)) ? 0 : 1;
      ++total;
      EXPECT_EQ(generate_network(p, seed), net);
    }
  }
  EXPECT_GE(static_cast<double>(dropped_incorrect), 0.99 * static_cast<double>(total));
  EXPECT_NE(generate_network(9, 1), generate_network(9, 2));
  EXPECT_THROW(generate_network(1, 0), InvalidArgument);
  EXPECT_THROW(generate_network(25, 0), InvalidArgument);
}

TEST(Sortnet, Batcher) {
  EXPECT_EQ(batcher(2).comparators, (std::vector<Comparator>{{0, 1}}));
  EXPECT_EQ(batcher(4).comparators.size(), 5u);
  EXPECT_EQ(batcher(8).comparators.size(), 19u);
  EXPECT_EQ(batcher(16).comparators.size(), 63u);
  for (std::size_t p = 2; p <= 16; ++p) {
    const auto net = batcher(p);
    EXPECT_TRUE(is_correct(net)) << p;
    for (auto [i, j] : net.comparators) EXPECT_LT(j, p);
  }
  EXPECT_THROW(batcher(1), InvalidArgument);
}

TEST(Sortnet, BatcherTopologicalSorts) {
  BigCount previous = 0;
  for (std::size_t p = 2; p <= 8; ++p) {
    const auto g = network_to_graph(batcher(p));
    const BigCount count = count_topological_sorts(g);
    EXPECT_GE(count, previous) << p;
    previous = count;
    if (p <= 5) {
      EXPECT_EQ(count, BigCount(brute_force_topo_sorts(g))) << p;
    }
  }
  EXPECT_GT(previous, BigCount(1000000));
  EXPECT_EQ(previous, BigCount(7055168));
}

TEST(Sortnet, NetworkToGraph) {
  const auto g = network_to_graph(make_network(3, {{0, 1}, {1, 2}, {0, 1}}));
  ASSERT_EQ(g.num_nodes(), 3u);
  std::vector<std::pair<NodeId, NodeId>> edges;
  for (const Edge& e : g.edges()) edges.emplace_back(e.src, e.dst);
  EXPECT_EQ(edges, (std::vector<std::pair<NodeId, NodeId>>{{0, 1}, {0, 2}, {1, 2}}));
  EXPECT_EQ(*g.node_labels(), (std::vector<std::string>{"0,1", "1,2", "0,1"}));
  EXPECT_EQ(network_to_graph(make_network(4, {{0, 1}, {2, 3}})).num_edges(), 0u);
  // Both wires last touched by the same comparator give a single edge.
  EXPECT_EQ(network_to_graph(make_network(2, {{0, 1}, {0, 1}})).num_edges(), 1u);
}

TEST(Sortnet, GraphDegreesAndAcyclicity) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto g = network_to_graph(generate_network(4 + seed % 8, seed));
    std::vector<int> in(g.num_nodes()), out(g.num_nodes());
    for (const Edge& e : g.edges()) {
      EXPECT_LT(e.src, e.dst);
      ++out[e.src];
      ++in[e.dst];
    }
    EXPECT_LE(*std::max_element(in.begin(), in.end()), 2);
    EXPECT_LE(*std::max_element(out.begin(), out.end()), 2);
  }
}

TEST(Sortnet, NearSequentiality) {
  EXPECT_DOUBLE_EQ(near_sequentiality(DirectedGraph(4, {{0, 1}, {1, 2}, {2, 3}})), 1.0);
  EXPECT_DOUBLE_EQ(near_sequentiality(DirectedGraph(6, {{0, 5}})), 5.0);
  EXPECT_DOUBLE_EQ(near_sequentiality(DirectedGraph(3, {})), 0.0);
  double total = 0.0, half_nodes = 0.0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto g = network_to_graph(generate_network(9, seed));
    total += near_sequentiality(g);
    half_nodes += static_cast<double>(g.num_nodes()) / 2.0;
  }
  EXPECT_LT(total, 0.25 * half_nodes);
}

TEST(Sortnet, SymmetrizationLosesOrder) {
  const auto a = make_network(3, {{0, 2}, {0, 1}, {1, 2}});
  const auto b = reversed(a);
  const auto ga = network_to_graph(a);
  const auto gb = network_to_graph(b);
  EXPECT_NE(is_correct(a), is_correct(b));
  EXPECT_FALSE(isomorphic(ga, gb));
  EXPECT_TRUE(isomorphic(symmetrize(ga), symmetrize(gb)));
  EXPECT_EQ(canonical_form(symmetrize(ga)), canonical_form(symmetrize(gb)));
  EXPECT_NE(canonical_form(ga), canonical_form(gb));
}

TEST(SortnetDataset, GroupsAndLabels) {
  SortnetConfig train{Split::train, 5, Scale::desk, 20, std::nullopt};
  for (std::size_t i = 0; i < 20; ++i) {
    const auto r = sortnet_record(train, i);
    EXPECT_EQ(r.label, i % 2 == 0);
    EXPECT_EQ(r.label, is_correct(r.network));
    EXPECT_GE(r.network.p, 7u);
    EXPECT_LE(r.network.p, 11u);
    EXPECT_EQ(r.network, i % 2 == 0 ? generate_network(r.network.p, r.seed)
                                    : drop_last(generate_network(r.network.p, r.seed)));
  }
  SortnetConfig val{Split::val, 5, Scale::desk, 9, std::nullopt};
  const auto group = sortnet_group(val, 1);
  ASSERT_EQ(group.size(), 3u);
  EXPECT_EQ(group[2].provenance, SortnetProvenance::reversed);
  EXPECT_EQ(group[2].network, reversed(group[0].network));
  EXPECT_EQ(group[0].network.p, 12u);
  EXPECT_THROW(sortnet_count(SortnetConfig{Split::val, 0, Scale::desk, 10, std::nullopt}), InvalidArgument);
  EXPECT_EQ(sortnet_count(SortnetConfig{Split::train, 0, Scale::desk, std::nullopt, std::nullopt}), 8000u);
  EXPECT_EQ(sortnet_count(SortnetConfig{Split::test, 0, Scale::paper, std::nullopt, std::nullopt}), 60000u);
}

TEST(SortnetDataset, ExactRatiosAndDeterminism) {
  const auto dir = std::filesystem::temp_directory_path() / "dirpe_test_sortnet";
  std::filesystem::remove_all(dir);
  for (Split split : {Split::train, Split::test}) {
    SortnetConfig config{split, 11, Scale::desk, 60, std::nullopt};
    ShardOptions one{dir.string(), "one", 25, false, 1};
    ShardOptions four{dir.string(), "four", 25, false, 4};
    const auto m1 = make_sortnet_dataset(config, one);
    const auto m4 = make_sortnet_dataset(config, four);
    EXPECT_EQ(m1["positives"].get<std::size_t>() * (split == Split::train ? 2 : 3), 60u);
    std::size_t lines = 0;
    for (std::size_t s = 0; s < 3; ++s) {
      char name[32];
      std::snprintf(name, sizeof name, "-%05zu.jsonl", s);
      const auto a = read_text_file((dir / ("one" + std::string(name))).string());
      EXPECT_EQ(a, read_text_file((dir / ("four" + std::string(name))).string()));
      std::istringstream in(a);
      for (std::string line; std::getline(in, line); ++lines) {
        const auto j = nlohmann::json::parse(line);
        std::vector<Comparator> comps;
        for (const auto& c : j["comparators"]) comps.emplace_back(c[0].get<std::uint32_t>(), c[1].get<std::uint32_t>());
        EXPECT_EQ(j["label"].get<bool>(), is_correct(make_network(j["p"].get<std::size_t>(), comps)));
      }
    }
    EXPECT_EQ(lines, 60u);
  }
}

}  // namespace
}  // namespace dirpe
