// SPDX-License-Identifier: Apache-2.0
#include "dirpe/spectral/baselines.hpp"

#include <cmath>
#include <numeric>
#include <vector>

#include "dirpe/core/error.hpp"

namespace dirpe {

Eigen::MatrixXd SvdEncoding::left() const { return u * singular_values.cwiseSqrt().asDiagonal(); }

Eigen::MatrixXd SvdEncoding::right() const { return v * singular_values.cwiseSqrt().asDiagonal(); }

Eigen::MatrixXd SvdEncoding::reconstruct() const { return u * singular_values.asDiagonal() * v.transpose(); }

SvdEncoding svd_encodings(const DirectedGraph& g, std::size_t rank) {
  const auto n = static_cast<Eigen::Index>(g.num_nodes());
  if (rank == 0 || rank > g.num_nodes()) throw InvalidArgument("rank must be in [1, n]");
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  for (const Edge& e : g.edges()) a(e.src, e.dst) = e.weight;

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Eigen::MatrixXd u = svd.matrixU();
  Eigen::MatrixXd v = svd.matrixV();
  const Eigen::VectorXd s = svd.singularValues();

  const auto deg = degrees(g).sym;
  const Eigen::VectorXd d = Eigen::Map<const Eigen::VectorXd>(deg.data(), n);
  const double tol = 1e-9 * std::max(1.0, s.size() > 0 ? s(0) : 0.0);
  Eigen::Index i = 0;
  while (i < n) {
    Eigen::Index j = i + 1;
    while (j < n && s(j - 1) - s(j) <= tol) ++j;
    const Eigen::Index c = j - i;
    if (c > 1 && s(i) > tol) {
      const Eigen::MatrixXd uc = u.middleCols(i, c);
      const Eigen::MatrixXd vc = v.middleCols(i, c);
      const Eigen::MatrixXd h =
          uc.transpose() * d.asDiagonal() * uc + vc.transpose() * d.asDiagonal() * vc;
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (h + h.transpose()));
      // Ascending eigenvalues; reverse for largest score first.
      const Eigen::MatrixXd r = es.eigenvectors().rowwise().reverse();
      u.middleCols(i, c) = uc * r;
      v.middleCols(i, c) = vc * r;
    }
    i = j;
  }

  const auto r = static_cast<Eigen::Index>(rank);
  return {u.leftCols(r), s.head(r), v.leftCols(r)};
}

Eigen::MatrixXd sinusoidal_pe(std::size_t n, std::size_t d_model) {
  if (d_model == 0 || d_model % 2 != 0) throw InvalidArgument("d_model must be even and positive");
  Eigen::MatrixXd pe(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(d_model));
  for (std::size_t v = 0; v < n; ++v) {
    for (std::size_t j = 0; j < d_model / 2; ++j) {
      const double angle = static_cast<double>(v) /
                           std::pow(10000.0, 2.0 * static_cast<double>(j) / static_cast<double>(d_model));
      pe(static_cast<Eigen::Index>(v), static_cast<Eigen::Index>(2 * j)) = std::cos(angle);
      pe(static_cast<Eigen::Index>(v), static_cast<Eigen::Index>(2 * j + 1)) = std::sin(angle);
    }
  }
  return pe;
}

}  // namespace dirpe
