// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <vector>

#include "dirpe/core/graph.hpp"

namespace dirpe {

/// Nodes sorted by the imaginary part of the normalized first eigenvector of
/// the unnormalized Magnetic Laplacian (q from relative_potential), largest
/// first so the source leads. Values within 1e-9 of each other are treated
/// as tied and ordered by node index.
std::vector<std::size_t> reorder_by_phase(const DirectedGraph& g, double q_rel = 0.25);

}  // namespace dirpe
