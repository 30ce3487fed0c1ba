// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "dirpe/core/graph.hpp"

namespace dirpe {

enum class Task { reachability, adjacency, undirected_distance, directed_distance };

std::string_view task_name(Task t);
/// Throws InvalidArgument for unknown names.
Task parse_task(std::string_view name);
bool is_classification(Task t);

/// Hop distances from `source`; -1 marks unreachable nodes.
std::vector<int> bfs_distances(const DirectedGraph& g, NodeId source, bool undirected = false);

/// Row-major n x n labels; row u is the source, column v the target.
/// Classification values are 0/1. Distances are hop counts, with 0 stored
/// where the mask is false.
struct PairwiseLabels {
  Task task = Task::reachability;
  std::size_t n = 0;
  std::vector<std::int32_t> values;
  std::vector<std::uint8_t> mask;

  std::int32_t value(std::size_t u, std::size_t v) const { return values[u * n + v]; }
  bool valid(std::size_t u, std::size_t v) const { return mask[u * n + v] != 0; }
};

/// Every node reaches itself at distance 0. The mask is all-true for the
/// classification tasks and marks existing paths for the distance tasks.
PairwiseLabels labels(const DirectedGraph& g, Task task);

/// Nested arrays: booleans for classification, integers for distances.
nlohmann::json labels_values_json(const PairwiseLabels& l);
nlohmann::json labels_mask_json(const PairwiseLabels& l);

}  // namespace dirpe
