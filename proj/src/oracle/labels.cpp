// SPDX-License-Identifier: Apache-2.0
#include "dirpe/oracle/labels.hpp"

#include <array>
#include <deque>
#include <string>

#include "dirpe/core/error.hpp"

namespace dirpe {
namespace {

constexpr std::array<std::string_view, 4> kTaskNames = {"reachability", "adjacency", "undirected_distance",
                                                        "directed_distance"};

}  // namespace

std::string_view task_name(Task t) { return kTaskNames[static_cast<std::size_t>(t)]; }

Task parse_task(std::string_view name) {
  for (std::size_t i = 0; i < kTaskNames.size(); ++i) {
    if (kTaskNames[i] == name) return static_cast<Task>(i);
  }
  throw InvalidArgument("unknown task '" + std::string(name) + "'");
}

bool is_classification(Task t) { return t == Task::reachability || t == Task::adjacency; }

std::vector<int> bfs_distances(const DirectedGraph& g, NodeId source, bool undirected) {
  if (source >= g.num_nodes()) throw InvalidArgument("BFS source out of range");
  std::vector<int> dist(g.num_nodes(), -1);
  std::deque<NodeId> queue{source};
  dist[source] = 0;
  while (!queue.empty()) {
    const NodeId v = queue.front();
    queue.pop_front();
    auto visit = [&](NodeId w) {
      if (dist[w] < 0) {
        dist[w] = dist[v] + 1;
        queue.push_back(w);
      }
    };
    for (std::uint32_t idx : g.out_edges(v)) visit(g.edges()[idx].dst);
    if (undirected) {
      for (std::uint32_t idx : g.in_edges(v)) visit(g.edges()[idx].src);
    }
  }
  return dist;
}

PairwiseLabels labels(const DirectedGraph& g, Task task) {
  const std::size_t n = g.num_nodes();
  PairwiseLabels l;
  l.task = task;
  l.n = n;
  l.values.assign(n * n, 0);
  l.mask.assign(n * n, 1);
  if (task == Task::adjacency) {
    for (const Edge& e : g.edges()) l.values[e.src * n + e.dst] = 1;
    return l;
  }
  const bool undirected = task == Task::undirected_distance;
  for (NodeId u = 0; u < n; ++u) {
    const auto dist = bfs_distances(g, u, undirected);
    for (std::size_t v = 0; v < n; ++v) {
      const std::size_t i = u * n + v;
      if (task == Task::reachability) {
        l.values[i] = dist[v] >= 0 ? 1 : 0;
      } else if (dist[v] >= 0) {
        l.values[i] = dist[v];
      } else {
        l.mask[i] = 0;
      }
    }
  }
  return l;
}

nlohmann::json labels_values_json(const PairwiseLabels& l) {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t u = 0; u < l.n; ++u) {
    nlohmann::json row = nlohmann::json::array();
    for (std::size_t v = 0; v < l.n; ++v) {
      if (is_classification(l.task)) {
        row.push_back(l.value(u, v) != 0);
      } else {
        row.push_back(l.value(u, v));
      }
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

nlohmann::json labels_mask_json(const PairwiseLabels& l) {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t u = 0; u < l.n; ++u) {
    nlohmann::json row = nlohmann::json::array();
    for (std::size_t v = 0; v < l.n; ++v) row.push_back(l.valid(u, v));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace dirpe
