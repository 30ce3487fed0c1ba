// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "dirpe/core/graph.hpp"

namespace dirpe {

/// Comparator (i, j) with i < j leaves the minimum on wire i.
using Comparator = std::pair<std::uint32_t, std::uint32_t>;

struct ComparatorNetwork {
  std::size_t p = 0;
  std::vector<Comparator> comparators;

  friend bool operator==(const ComparatorNetwork&, const ComparatorNetwork&) = default;
};

inline constexpr std::size_t kMaxCheckedWires = 24;
inline constexpr std::size_t kMaxComparators = 512;
inline constexpr int kGenerationRetries = 100;

/// Canonicalizes pairs to i < j; throws InvalidArgument for i == j or
/// wires outside [0, p).
ComparatorNetwork make_network(std::size_t p, const std::vector<Comparator>& comparators);

/// Exhaustive 0-1 check of all 2^p inputs. Throws WireCountTooLarge for
/// p > 24.
bool is_correct(const ComparatorNetwork& c);

/// Greedy random construction: track the distinct unsorted 0-1 outputs,
/// pick two distinct wires among those next to an out-of-order position,
/// skip a pick equal to the previous comparator, stop once every output is
/// sorted. Attempts that pass 512 comparators are restarted, up to 100
/// times (then GenerationFailed). Requires 2 <= p <= 24.
ComparatorNetwork generate_network(std::size_t p, std::uint64_t seed);

/// Batcher's odd-even mergesort for any p >= 2 (the power-of-two network
/// with comparators touching wires >= p removed).
ComparatorNetwork batcher(std::size_t p);

ComparatorNetwork drop_last(const ComparatorNetwork& c);
ComparatorNetwork reversed(const ComparatorNetwork& c);

/// One node per comparator, labelled "i,j", with an edge from the previous
/// comparator on wire i and from the previous comparator on wire j.
DirectedGraph network_to_graph(const ComparatorNetwork& c);

/// Mean |u - v| over edges; 0 for a graph without edges.
double near_sequentiality(const DirectedGraph& g);

}  // namespace dirpe
