// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <string>

#include "dirpe/core/graph.hpp"

namespace dirpe {

struct CanonicalOptions {
  bool node_labels = true;
  bool edge_labels = true;
  bool weights = false;
  /// Search-tree nodes explored before giving up with TooLarge.
  std::size_t search_budget = 200000;
};

/// Relabeling-invariant certificate: equal strings iff the graphs are
/// isomorphic under the chosen attributes. Colour refinement plus
/// individualization; the lexicographically smallest leaf wins.
std::string canonical_form(const DirectedGraph& g, const CanonicalOptions& options = {});

/// Backtracking isomorphism test (candidates restricted by joint colour
/// refinement). Intended as an independent check for n <= 200.
bool isomorphic(const DirectedGraph& a, const DirectedGraph& b, bool use_labels = true);

}  // namespace dirpe
