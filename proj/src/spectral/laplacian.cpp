// SPDX-License-Identifier: Apache-2.0
#include "dirpe/spectral/laplacian.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "dirpe/core/error.hpp"

namespace dirpe {
namespace {

/// exp(2πi·turns), exact when turns is a multiple of 1/4.
Complex unit_phase(double turns) {
  const double quarters = turns * 4.0;
  if (quarters == std::floor(quarters) && std::abs(quarters) < 1e15) {
    static constexpr Complex kQuarter[4] = {{1.0, 0.0}, {0.0, 1.0}, {-1.0, 0.0}, {0.0, -1.0}};
    const auto r = static_cast<long long>(quarters) % 4;
    return kQuarter[r < 0 ? r + 4 : r];
  }
  return std::polar(1.0, 2.0 * std::numbers::pi * turns);
}

}  // namespace

bool MagneticLaplacian::is_real() const {
  for (int c = 0; c < matrix.outerSize(); ++c) {
    for (SparseComplexMatrix::InnerIterator it(matrix, c); it; ++it) {
      if (it.value().imag() != 0.0) return false;
    }
  }
  return true;
}

MagneticLaplacian magnetic_laplacian(const DirectedGraph& g, double q, bool normalized) {
  if (!(q >= 0.0) || !std::isfinite(q)) throw InvalidArgument("potential q must be finite and >= 0");
  const std::size_t n = g.num_nodes();
  const DirectedGraph sym = symmetrize(g);
  std::vector<double> deg(n, 0.0);
  for (const Edge& e : sym.edges()) deg[e.src] += e.weight;

  std::vector<double> scale(n, 1.0);
  if (normalized) {
    for (std::size_t v = 0; v < n; ++v) {
      if (deg[v] <= 0.0) {
        throw IsolatedNode("node " + std::to_string(v) +
                           " has zero degree; the normalized Laplacian is undefined");
      }
      scale[v] = 1.0 / std::sqrt(deg[v]);
    }
  }

  // Entries are computed once for u <= v and mirrored, so the result is
  // Hermitian bit for bit.
  std::vector<Eigen::Triplet<Complex>> triplets;
  triplets.reserve(sym.num_edges() + n);
  std::vector<Complex> diag(n, normalized ? Complex(1.0) : Complex(0.0));
  if (!normalized) {
    for (std::size_t v = 0; v < n; ++v) diag[v] = deg[v];
  }
  for (const Edge& e : sym.edges()) {
    const auto u = e.src;
    const auto v = e.dst;
    if (u > v) continue;
    const double a = normalized ? e.weight * scale[u] * scale[v] : e.weight;
    if (u == v) {
      diag[u] -= a;
      continue;
    }
    const double turns = q * ((g.has_edge(u, v) ? 1.0 : 0.0) - (g.has_edge(v, u) ? 1.0 : 0.0));
    const Complex entry = -a * unit_phase(turns);
    triplets.emplace_back(static_cast<int>(u), static_cast<int>(v), entry);
    triplets.emplace_back(static_cast<int>(v), static_cast<int>(u), std::conj(entry));
  }
  for (std::size_t v = 0; v < n; ++v) {
    triplets.emplace_back(static_cast<int>(v), static_cast<int>(v), Complex(diag[v].real(), 0.0));
  }

  MagneticLaplacian lap;
  lap.q = q;
  lap.normalized = normalized;
  lap.matrix.resize(static_cast<int>(n), static_cast<int>(n));
  lap.matrix.setFromTriplets(triplets.begin(), triplets.end());
  lap.matrix.makeCompressed();
  return lap;
}

double relative_potential(const DirectedGraph& g, double q_rel) {
  if (!(q_rel > 0.0)) throw InvalidArgument("relative potential must be > 0");
  const std::size_t m_dir = purely_directed_count(g);
  const std::size_t d = std::max<std::size_t>(std::min(m_dir, g.num_nodes()), 1);
  return q_rel / static_cast<double>(d);
}

double rayleigh(const MagneticLaplacian& lap, const Eigen::VectorXcd& x) {
  if (static_cast<std::size_t>(x.size()) != lap.size()) {
    throw InvalidArgument("vector length does not match the Laplacian");
  }
  const double denom = x.squaredNorm();
  if (denom == 0.0) throw InvalidArgument("Rayleigh quotient of the zero vector");
  const Complex num = x.dot(lap.matrix * x);  // dot conjugates its first argument
  if (std::abs(num.imag()) > 1e-9 * std::max(1.0, std::abs(num.real()))) {
    throw NumericalError("quadratic form has imaginary part " + std::to_string(num.imag()));
  }
  return num.real() / denom;
}

}  // namespace dirpe
