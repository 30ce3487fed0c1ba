// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "dirpe/spectral/laplacian.hpp"

namespace dirpe {

struct Anchor {
  enum class Kind { none, root, foremost_source };
  Kind kind = Kind::foremost_source;
  std::size_t root = 0;

  static Anchor none() { return {Kind::none, 0}; }
  static Anchor foremost_source() { return {Kind::foremost_source, 0}; }
  static Anchor at_root(std::size_t node) { return {Kind::root, node}; }
};

/// k smallest eigenpairs of a Magnetic Laplacian.
struct EigenSystem {
  /// Ascending. Padding entries are 0.
  Eigen::VectorXd eigenvalues;
  /// n x k, unit-norm columns. Padding columns are 0.
  Eigen::MatrixXcd eigenvectors;
  bool normalized = false;
  Anchor anchor = Anchor::none();
  /// Node chosen as rotation origin by normalize_eigvecs, if any.
  std::ptrdiff_t anchor_node = -1;
  /// The trailing `padding` columns are zero filler (k > n was requested).
  std::size_t padding = 0;
  /// Set when the operator had no imaginary entries.
  bool real_operator = false;
  /// Column indices of eigenvalue clusters with gaps below 1e-8.
  std::vector<std::vector<std::size_t>> degenerate_clusters;

  std::size_t num_nodes() const { return static_cast<std::size_t>(eigenvectors.rows()); }
  std::size_t k() const { return static_cast<std::size_t>(eigenvectors.cols()); }
  std::size_t valid_columns() const { return k() - padding; }
};

struct EigOptions {
  /// Dense solver below this size, block Krylov solver at or above it.
  std::size_t dense_threshold = 512;
  /// Target residual ‖Lγ - λγ‖ / max(1, |λ|) for the iterative solver.
  double tolerance = 1e-9;
  int max_restarts = 50;
  std::uint64_t seed = 0x5eed;
};

inline constexpr double kEigenvalueTieTolerance = 1e-8;

/// Throws InvalidArgument when k == 0 and SolverError when the iterative
/// solver fails to converge.
EigenSystem eig_smallest(const MagneticLaplacian& lap, std::size_t k, const EigOptions& options = {});

/// Fixes sign and rotation of every eigenvector.
///
/// Real operators: each column is made real and the entry of largest real
/// magnitude positive (ties within 1e-12 to the lower index); the anchor is
/// not used. Complex operators: sign step as above, then every column is
/// rotated so that row u has phase 0, where u is the root or, for
/// foremost_source, the node whose entry in the first eigenvector has the
/// largest phase measured from the phase of the column sum. A column with
/// |Γ_{u,j}| < 1e-12 is rotated by its entry of largest modulus instead.
EigenSystem normalize_eigvecs(const EigenSystem& es, Anchor anchor = Anchor::foremost_source());

/// Unit-norm closed-form eigenvector j of the unnormalized Magnetic
/// Laplacian of the directed sequence on n nodes:
/// exp(-2πiqv)·cos((v + 1/2)jπ/n).
Eigen::VectorXcd sequence_eigvec_oracle(std::size_t n, double q, std::size_t j);
/// Matching eigenvalue 2 - 2cos(jπ/n).
double sequence_eigval_oracle(std::size_t n, std::size_t j);

/// X = Γ̄ᵀx.
Eigen::VectorXcd gft(const EigenSystem& es, const Eigen::VectorXcd& x);

struct InverseGft {
  Eigen::VectorXcd signal;
  /// True when the basis is truncated and the result is only a projection.
  bool lossy = false;
};

/// x = ΓX.
InverseGft igft(const EigenSystem& es, const Eigen::VectorXcd& spectrum);

}  // namespace dirpe
