// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>

#include <Eigen/Dense>

#include "dirpe/core/graph.hpp"

namespace dirpe {

/// Truncated SVD of the (weighted) adjacency matrix.
struct SvdEncoding {
  Eigen::MatrixXd u;
  Eigen::VectorXd singular_values;
  Eigen::MatrixXd v;

  /// U_r Σ_r^1/2
  Eigen::MatrixXd left() const;
  /// V_r Σ_r^1/2
  Eigen::MatrixXd right() const;
  /// U_r Σ_r V_rᵀ
  Eigen::MatrixXd reconstruct() const;
};

/// Singular vectors of a repeated singular value (relative gap below 1e-9)
/// are rotated inside their cluster to diagonalize U_cᵀ D_s U_c + V_cᵀ D_s V_c
/// and ordered by that score, largest first (D_s: symmetrized degrees).
/// This favours well-connected inner nodes and makes the result
/// independent of how the SVD routine orders ties.
SvdEncoding svd_encodings(const DirectedGraph& g, std::size_t rank);

/// PE[v, 2j] = cos(v / 10000^(2j/d)), PE[v, 2j+1] = sin(v / 10000^(2j/d)).
/// Throws InvalidArgument for odd d_model.
Eigen::MatrixXd sinusoidal_pe(std::size_t n, std::size_t d_model);

}  // namespace dirpe
