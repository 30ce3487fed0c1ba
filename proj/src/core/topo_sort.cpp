// SPDX-License-Identifier: Apache-2.0
#include "dirpe/core/topo_sort.hpp"

#include <bit>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "dirpe/core/error.hpp"

namespace dirpe {

BigCount count_topological_sorts(const DirectedGraph& g, std::size_t max_nodes) {
  const std::size_t n = g.num_nodes();
  if (max_nodes > 64) throw InvalidArgument("topological sort cap cannot exceed 64 nodes");
  if (n > max_nodes) {
    throw TooLarge("topological sort counting is capped at " + std::to_string(max_nodes) +
                   " nodes, graph has " + std::to_string(n));
  }
  if (!is_acyclic(g)) throw CyclicGraph("graph has a directed cycle");
  if (n == 0) return 1;

  std::vector<std::uint64_t> preds(n, 0);
  for (const Edge& e : g.edges()) {
    if (e.src != e.dst) preds[e.dst] |= std::uint64_t{1} << e.src;
  }

  // Layer k holds every downward-closed set of size k with its count.
  std::unordered_map<std::uint64_t, BigCount> layer{{0, 1}};
  for (std::size_t k = 0; k < n; ++k) {
    std::unordered_map<std::uint64_t, BigCount> next;
    next.reserve(layer.size() * 2);
    for (const auto& [set, count] : layer) {
      for (std::size_t v = 0; v < n; ++v) {
        const std::uint64_t bit = std::uint64_t{1} << v;
        if ((set & bit) == 0 && (preds[v] & ~set) == 0) next[set | bit] += count;
      }
    }
    layer = std::move(next);
  }
  return layer.begin()->second;
}

}  // namespace dirpe
