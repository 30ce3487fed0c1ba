// SPDX-License-Identifier: Apache-2.0
#include "dirpe/spectral/eigen.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include <Eigen/SparseCholesky>

#include "dirpe/core/error.hpp"
#include "dirpe/core/rng.hpp"

namespace dirpe {
namespace {

constexpr double kTiny = 1e-12;

Eigen::MatrixXcd random_block(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
  Eigen::MatrixXcd m(rows, cols);
  for (Eigen::Index c = 0; c < cols; ++c) {
    for (Eigen::Index r = 0; r < rows; ++r) m(r, c) = Complex(rng.normal(), rng.normal());
  }
  return m;
}

/// Orthogonalizes `block` against the first `filled` columns of `basis`
/// (two passes) and appends the surviving columns. Returns the new count.
Eigen::Index append_orthonormal(Eigen::MatrixXcd& basis, Eigen::Index filled, Eigen::MatrixXcd block) {
  for (Eigen::Index c = 0; c < block.cols() && filled < basis.cols(); ++c) {
    Eigen::VectorXcd v = block.col(c);
    const double original = v.norm();
    if (original == 0.0) continue;
    for (int pass = 0; pass < 2; ++pass) {
      if (filled > 0) {
        const auto b = basis.leftCols(filled);
        v -= b * (b.adjoint() * v);
      }
    }
    const double norm = v.norm();
    if (norm <= 1e-10 * original) continue;
    basis.col(filled++) = v / norm;
  }
  return filled;
}

void sort_ascending(Eigen::VectorXd& values, Eigen::MatrixXcd& vectors) {
  std::vector<Eigen::Index> order(static_cast<std::size_t>(values.size()));
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<Eigen::Index>(i);
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return values(a) < values(b); });
  Eigen::VectorXd v2(values.size());
  Eigen::MatrixXcd m2(vectors.rows(), vectors.cols());
  for (std::size_t i = 0; i < order.size(); ++i) {
    v2(static_cast<Eigen::Index>(i)) = values(order[i]);
    m2.col(static_cast<Eigen::Index>(i)) = vectors.col(order[i]);
  }
  values = std::move(v2);
  vectors = std::move(m2);
}

void dense_solve(const MagneticLaplacian& lap, Eigen::Index k, Eigen::VectorXd& values,
                 Eigen::MatrixXcd& vectors) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(lap.dense());
  if (solver.info() != Eigen::Success) throw SolverError("dense eigensolver failed", NAN, 0);
  values = solver.eigenvalues().head(k);
  vectors = solver.eigenvectors().leftCols(k);
}

// Block Krylov iteration on (L + σI)^-1 with Rayleigh-Ritz on L itself and
// explicit restarts.
void krylov_solve(const MagneticLaplacian& lap, Eigen::Index k, const EigOptions& opt,
                  Eigen::VectorXd& values, Eigen::MatrixXcd& vectors) {
  const Eigen::Index n = lap.matrix.rows();
  const Eigen::Index block = std::min(n, k + 4);
  const Eigen::Index max_dim = std::min(n, std::max(3 * k + 24, 2 * block));

  // Gershgorin bound keeps the shift proportional to the spectrum's scale.
  double scale = 0.0;
  for (Eigen::Index c = 0; c < n; ++c) {
    double s = 0.0;
    for (SparseComplexMatrix::InnerIterator it(lap.matrix, c); it; ++it) s += std::abs(it.value());
    scale = std::max(scale, s);
  }
  const double sigma = 1e-4 * std::max(scale, 1.0);
  SparseComplexMatrix shifted = lap.matrix;
  for (Eigen::Index i = 0; i < n; ++i) shifted.coeffRef(i, i) += sigma;
  Eigen::SimplicialLDLT<SparseComplexMatrix, Eigen::Lower> factor(shifted);
  if (factor.info() != Eigen::Success) {
    throw SolverError("factorization of the shifted Laplacian failed", NAN, 0);
  }

  Rng rng(opt.seed);
  Eigen::MatrixXcd start = random_block(n, block, rng);
  double worst = NAN;
  for (int restart = 0; restart <= opt.max_restarts; ++restart) {
    Eigen::MatrixXcd basis(n, max_dim);
    Eigen::Index filled = append_orthonormal(basis, 0, start);
    Eigen::Index last_begin = 0;
    while (filled < max_dim) {
      const Eigen::Index last_end = filled;
      Eigen::MatrixXcd next = factor.solve(basis.middleCols(last_begin, last_end - last_begin));
      filled = append_orthonormal(basis, filled, std::move(next));
      if (filled == last_end) {
        // Invariant subspace reached; top up with fresh directions.
        filled = append_orthonormal(basis, filled, random_block(n, block, rng));
        if (filled == last_end) break;
      }
      last_begin = last_end;
    }
    const auto v = basis.leftCols(filled);
    const Eigen::MatrixXcd lv = lap.matrix * v;
    Eigen::MatrixXcd projected = v.adjoint() * lv;
    projected = (0.5 * (projected + projected.adjoint())).eval();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> ritz(projected);
    if (ritz.info() != Eigen::Success) throw SolverError("Rayleigh-Ritz step failed", NAN, restart);

    const Eigen::Index keep = std::min(filled, std::max(k, block));
    Eigen::MatrixXcd y = v * ritz.eigenvectors().leftCols(keep);
    const Eigen::MatrixXcd ly = lv * ritz.eigenvectors().leftCols(keep);
    worst = 0.0;
    for (Eigen::Index j = 0; j < k; ++j) {
      const double theta = ritz.eigenvalues()(j);
      const double res = (ly.col(j) - theta * y.col(j)).norm() / std::max(1.0, std::abs(theta));
      worst = std::max(worst, res);
    }
    if (worst <= opt.tolerance) {
      values = ritz.eigenvalues().head(k);
      vectors = y.leftCols(k);
      for (Eigen::Index j = 0; j < k; ++j) vectors.col(j).normalize();
      return;
    }
    start.resize(n, block);
    start.leftCols(keep) = y.leftCols(keep);
    if (keep < block) start.rightCols(block - keep) = random_block(n, block - keep, rng);
  }
  throw SolverError("block Krylov solver did not converge after " + std::to_string(opt.max_restarts) +
                        " restarts (max relative residual " + std::to_string(worst) + ")",
                    worst, opt.max_restarts);
}

std::vector<std::vector<std::size_t>> find_clusters(const Eigen::VectorXd& values, std::size_t count) {
  std::vector<std::vector<std::size_t>> clusters;
  std::size_t i = 0;
  while (i < count) {
    std::size_t j = i + 1;
    while (j < count && values(static_cast<Eigen::Index>(j)) - values(static_cast<Eigen::Index>(j - 1)) <
                            kEigenvalueTieTolerance) {
      ++j;
    }
    if (j - i > 1) {
      std::vector<std::size_t> members(j - i);
      for (std::size_t t = 0; t < members.size(); ++t) members[t] = i + t;
      clusters.push_back(std::move(members));
    }
    i = j;
  }
  return clusters;
}

/// Index of the entry of largest |Re|, lower index on ties within 1e-12.
Eigen::Index max_real_index(const Eigen::MatrixXcd& m, Eigen::Index col) {
  Eigen::Index best = 0;
  double best_val = -1.0;
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    const double val = std::abs(m(r, col).real());
    if (val > best_val + kTiny) {
      best = r;
      best_val = val;
    }
  }
  return best;
}

void sign_step(Eigen::MatrixXcd& m, std::size_t cols) {
  for (Eigen::Index c = 0; c < static_cast<Eigen::Index>(cols); ++c) {
    if (m(max_real_index(m, c), c).real() < 0.0) m.col(c) *= -1.0;
  }
}

Eigen::Index max_modulus_index(const Eigen::MatrixXcd& m, Eigen::Index col) {
  Eigen::Index best = 0;
  for (Eigen::Index r = 1; r < m.rows(); ++r) {
    if (std::abs(m(r, col)) > std::abs(m(best, col)) + kTiny) best = r;
  }
  return best;
}

/// Multiplies column `col` by the unit factor that makes row `row` real positive.
void rotate_to(Eigen::MatrixXcd& m, Eigen::Index col, Eigen::Index row) {
  const Complex z = m(row, col);
  if (std::abs(z) > kTiny) m.col(col) *= std::conj(z) / std::abs(z);
}

/// Phase of z in (-π, π], with values near -π folded onto π so that
/// negative reals compare consistently.
double folded_phase(Complex z) {
  const double a = std::arg(z);
  return a <= -std::numbers::pi + kTiny ? std::numbers::pi : a;
}

}  // namespace

EigenSystem eig_smallest(const MagneticLaplacian& lap, std::size_t k, const EigOptions& options) {
  if (k == 0) throw InvalidArgument("k must be at least 1");
  const std::size_t n = lap.size();
  if (n == 0) throw InvalidArgument("empty Laplacian");
  const auto k_eff = static_cast<Eigen::Index>(std::min(k, n));

  Eigen::VectorXd values;
  Eigen::MatrixXcd vectors;
  if (n < options.dense_threshold || k_eff + 4 >= static_cast<Eigen::Index>(n)) {
    dense_solve(lap, k_eff, values, vectors);
  } else {
    krylov_solve(lap, k_eff, options, values, vectors);
  }
  sort_ascending(values, vectors);

  EigenSystem es;
  es.real_operator = lap.is_real();
  es.degenerate_clusters = find_clusters(values, static_cast<std::size_t>(k_eff));
  es.padding = k - static_cast<std::size_t>(k_eff);
  es.eigenvalues = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(k));
  es.eigenvalues.head(k_eff) = values;
  es.eigenvectors = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(k));
  es.eigenvectors.leftCols(k_eff) = vectors;
  return es;
}

EigenSystem normalize_eigvecs(const EigenSystem& es, Anchor anchor) {
  EigenSystem out = es;
  const std::size_t cols = es.valid_columns();
  const auto n = static_cast<Eigen::Index>(es.num_nodes());
  Eigen::MatrixXcd& g = out.eigenvectors;
  if (anchor.kind == Anchor::Kind::root && anchor.root >= es.num_nodes()) {
    throw InvalidArgument("anchor root " + std::to_string(anchor.root) + " out of range for n=" +
                          std::to_string(es.num_nodes()));
  }
  out.normalized = true;
  out.anchor = anchor;
  out.anchor_node = -1;
  if (cols == 0 || n == 0) return out;

  if (es.real_operator) {
    // Strip the arbitrary phase via the entry of largest modulus, then fix sign.
    for (Eigen::Index c = 0; c < static_cast<Eigen::Index>(cols); ++c) {
      rotate_to(g, c, max_modulus_index(g, c));
      for (Eigen::Index r = 0; r < n; ++r) g(r, c) = Complex(g(r, c).real(), 0.0);
    }
    sign_step(g, cols);
    return out;
  }

  sign_step(g, cols);
  if (anchor.kind == Anchor::Kind::none) return out;

  Eigen::Index u = 0;
  if (anchor.kind == Anchor::Kind::root) {
    u = static_cast<Eigen::Index>(anchor.root);
  } else {
    const Complex m = g.col(0).sum();
    const Complex ref = std::abs(m) > kTiny ? std::conj(m) / std::abs(m) : Complex(1.0);
    double best = -10.0;
    for (Eigen::Index r = 0; r < n; ++r) {
      if (std::abs(g(r, 0)) <= kTiny) continue;
      const double phase = folded_phase(g(r, 0) * ref);
      if (phase > best + kTiny) {
        best = phase;
        u = r;
      }
    }
  }
  out.anchor_node = u;
  for (Eigen::Index c = 0; c < static_cast<Eigen::Index>(cols); ++c) {
    rotate_to(g, c, std::abs(g(u, c)) > kTiny ? u : max_modulus_index(g, c));
  }
  return out;
}

Eigen::VectorXcd sequence_eigvec_oracle(std::size_t n, double q, std::size_t j) {
  if (n == 0 || j >= n) throw InvalidArgument("need 0 <= j < n");
  Eigen::VectorXcd v(static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) {
    const double vv = static_cast<double>(i);
    const double c = std::cos((vv + 0.5) * static_cast<double>(j) * std::numbers::pi / static_cast<double>(n));
    v(static_cast<Eigen::Index>(i)) = std::polar(1.0, -2.0 * std::numbers::pi * q * vv) * c;
  }
  return v.normalized();
}

double sequence_eigval_oracle(std::size_t n, std::size_t j) {
  return 2.0 - 2.0 * std::cos(static_cast<double>(j) * std::numbers::pi / static_cast<double>(n));
}

Eigen::VectorXcd gft(const EigenSystem& es, const Eigen::VectorXcd& x) {
  if (static_cast<std::size_t>(x.size()) != es.num_nodes()) {
    throw InvalidArgument("signal length does not match the node count");
  }
  return es.eigenvectors.adjoint() * x;
}

InverseGft igft(const EigenSystem& es, const Eigen::VectorXcd& spectrum) {
  if (static_cast<std::size_t>(spectrum.size()) != es.k()) {
    throw InvalidArgument("spectrum length does not match the number of eigenvectors");
  }
  return {es.eigenvectors * spectrum, es.valid_columns() < es.num_nodes()};
}

}  // namespace dirpe
