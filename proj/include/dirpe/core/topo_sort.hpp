// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>

#include <boost/multiprecision/cpp_int.hpp>

#include "dirpe/core/graph.hpp"

namespace dirpe {

using BigCount = boost::multiprecision::cpp_int;

inline constexpr std::size_t kDefaultTopoSortCap = 24;

/// Number of linear extensions of a DAG, by dynamic programming over
/// downward-closed node subsets. Self-loops are ignored.
///
/// Throws CyclicGraph for graphs with a directed cycle and TooLarge when
/// n exceeds `max_nodes` (which itself may not exceed 64).
BigCount count_topological_sorts(const DirectedGraph& g, std::size_t max_nodes = kDefaultTopoSortCap);

}  // namespace dirpe
