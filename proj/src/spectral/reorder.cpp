// SPDX-License-Identifier: Apache-2.0
#include "dirpe/spectral/reorder.hpp"

#include <algorithm>
#include <numeric>

#include "dirpe/spectral/eigen.hpp"
#include "dirpe/spectral/laplacian.hpp"

namespace dirpe {

std::vector<std::size_t> reorder_by_phase(const DirectedGraph& g, double q_rel) {
  const std::size_t n = g.num_nodes();
  if (n == 0) return {};
  const auto lap = magnetic_laplacian(g, relative_potential(g, q_rel), false);
  const auto es = normalize_eigvecs(eig_smallest(lap, 1), Anchor::foremost_source());

  std::vector<double> key(n);
  for (std::size_t v = 0; v < n; ++v) key[v] = es.eigenvectors(static_cast<Eigen::Index>(v), 0).imag();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return key[a] > key[b]; });

  // Runs of nearly equal values are put back into index order.
  constexpr double kTie = 1e-9;
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i + 1;
    while (j < n && key[order[j - 1]] - key[order[j]] <= kTie) ++j;
    std::sort(order.begin() + static_cast<std::ptrdiff_t>(i), order.begin() + static_cast<std::ptrdiff_t>(j));
    i = j;
  }
  return order;
}

}  // namespace dirpe
