// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include "dirpe/core/graph.hpp"

namespace dirpe {

using Complex = std::complex<double>;
using SparseComplexMatrix = Eigen::SparseMatrix<Complex, Eigen::ColMajor>;

/// Magnetic Laplacian L^(q), either D_s - A_s ⊙ exp(iΘ) or its symmetrically
/// degree-normalized form I - (D_s^-1/2 A_s D_s^-1/2) ⊙ exp(iΘ).
///
/// A_s is symmetrize(g); Θ_{u,v} = 2πq(1[u->v] - 1[v->u]) uses the edge
/// pattern only, weights enter through A_s. A forward edge u->v therefore
/// puts -A_s(u,v)·exp(2πiq) at (u, v).
struct MagneticLaplacian {
  SparseComplexMatrix matrix;
  double q = 0.0;
  bool normalized = false;

  std::size_t size() const { return static_cast<std::size_t>(matrix.rows()); }
  Eigen::MatrixXcd dense() const { return Eigen::MatrixXcd(matrix); }
  /// True when every entry has zero imaginary part.
  bool is_real() const;
};

/// Throws InvalidArgument for q < 0 and IsolatedNode when `normalized` is
/// set and some node has zero symmetrized degree.
MagneticLaplacian magnetic_laplacian(const DirectedGraph& g, double q, bool normalized);

/// q = q_rel / max(min(m_dir, n), 1) with m_dir the purely directed edge count.
double relative_potential(const DirectedGraph& g, double q_rel);

/// Rayleigh quotient x̄ᵀLx / x̄ᵀx. Throws InvalidArgument for a zero vector
/// and NumericalError when the numerator is not real within 1e-9.
double rayleigh(const MagneticLaplacian& lap, const Eigen::VectorXcd& x);

}  // namespace dirpe
