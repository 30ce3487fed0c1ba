// SPDX-License-Identifier: Apache-2.0
#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

#include <gtest/gtest.h>

#include "dirpe/core/error.hpp"
#include "dirpe/core/generators.hpp"
#include "dirpe/core/rng.hpp"
#include "dirpe/spectral/baselines.hpp"
#include "dirpe/spectral/bench.hpp"
#include "dirpe/spectral/eigen.hpp"
#include "dirpe/spectral/export.hpp"
#include "dirpe/spectral/laplacian.hpp"
#include "dirpe/spectral/reorder.hpp"

namespace dirpe {
namespace {

constexpr Complex kI(0.0, 1.0);

Eigen::VectorXcd random_vector(std::size_t n, Rng& rng) {
  Eigen::VectorXcd x(static_cast<Eigen::Index>(n));
  for (Eigen::Index i = 0; i < x.size(); ++i) x(i) = Complex(rng.normal(), rng.normal());
  return x;
}

// Dense reference built straight from the definition, entry by entry.
Eigen::MatrixXcd reference_laplacian(const DirectedGraph& g, double q, bool normalized) {
  const auto n = static_cast<Eigen::Index>(g.num_nodes());
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  for (const Edge& e : g.edges()) a(e.src, e.dst) = e.weight;
  const bool weighted = g.is_weighted();
  Eigen::MatrixXd as(n, n);
  Eigen::MatrixXd pattern = (a.array() > 0).cast<double>();
  for (Eigen::Index u = 0; u < n; ++u) {
    for (Eigen::Index v = 0; v < n; ++v) {
      as(u, v) = weighted ? 0.5 * (a(u, v) + a(v, u)) : std::max(pattern(u, v), pattern(v, u));
    }
  }
  const Eigen::VectorXd d = as.rowwise().sum();
  Eigen::MatrixXcd l(n, n);
  for (Eigen::Index u = 0; u < n; ++u) {
    for (Eigen::Index v = 0; v < n; ++v) {
      const double theta = 2 * std::numbers::pi * q * (pattern(u, v) - pattern(v, u));
      const Complex phase = std::exp(kI * theta);
      if (normalized) {
        l(u, v) = (u == v ? 1.0 : 0.0) - as(u, v) / std::sqrt(d(u) * d(v)) * phase;
      } else {
        l(u, v) = (u == v ? d(u) : 0.0) - as(u, v) * phase;
      }
    }
  }
  return l;
}

TEST(MagneticLaplacian, FiveNodeSequenceExact) {
  const auto g = make_topology(TopologyName::sequence, 5);
  Eigen::MatrixXcd l0 = Eigen::MatrixXcd::Zero(5, 5);
  Eigen::MatrixXcd l14 = Eigen::MatrixXcd::Zero(5, 5);
  const double diag[] = {1, 2, 2, 2, 1};
  for (int i = 0; i < 5; ++i) {
    l0(i, i) = l14(i, i) = diag[i];
    if (i + 1 < 5) {
      l0(i, i + 1) = l0(i + 1, i) = -1.0;
      l14(i, i + 1) = -kI;
      l14(i + 1, i) = kI;
    }
  }
  const auto a = magnetic_laplacian(g, 0.0, false).dense();
  const auto b = magnetic_laplacian(g, 0.25, false).dense();
  EXPECT_LE((a - l0).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_LE((b - l14).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(MagneticLaplacian, MatchesReferenceAndIsHermitian) {
  Rng rng(11);
  for (int t = 0; t < 30; ++t) {
    auto g = erdos_renyi(3 + rng.uniform_below(15), 1.5, t % 3 == 0, rng);
    if (t % 4 == 1) {
      std::vector<Edge> edges(g.edges().begin(), g.edges().end());
      for (Edge& e : edges) e.weight = 0.5 + rng.uniform01();
      edges.push_back({0, 0, 2.0});
      if (!g.has_edge(0, 0)) g = DirectedGraph(g.num_nodes(), edges);
    }
    for (bool normalized : {false, true}) {
      const double q = rng.uniform01() * 0.5;
      if (normalized) {
        const auto deg = degrees(g).sym;
        if (std::any_of(deg.begin(), deg.end(), [](double d) { return d == 0.0; })) {
          EXPECT_THROW(magnetic_laplacian(g, q, true), IsolatedNode);
          continue;
        }
      }
      const auto l = magnetic_laplacian(g, q, normalized).dense();
      EXPECT_LE((l - reference_laplacian(g, q, normalized)).cwiseAbs().maxCoeff(), 1e-12);
      EXPECT_EQ(l, l.adjoint().eval());
    }
  }
}

TEST(MagneticLaplacian, UndirectedIgnoresPotential) {
  const auto tri = symmetrize(make_topology(TopologyName::circle, 3));
  EXPECT_EQ(magnetic_laplacian(tri, 0.2, false).dense(), magnetic_laplacian(tri, 0.0, false).dense());
  for (double q : {0.3, 1.7, 10.0}) {
    EXPECT_EQ(magnetic_laplacian(tri, q, true).dense(), magnetic_laplacian(tri, 0.0, true).dense());
  }
}

TEST(MagneticLaplacian, SelfLoopsOnlyAffectNormalized) {
  const DirectedGraph plain(2, {{0, 1, 1.0}});
  const DirectedGraph loop(2, {{0, 0, 1.0}, {0, 1, 1.0}});
  EXPECT_EQ(magnetic_laplacian(plain, 0.1, false).dense(), magnetic_laplacian(loop, 0.1, false).dense());
  EXPECT_NE(magnetic_laplacian(plain, 0.1, true).dense(), magnetic_laplacian(loop, 0.1, true).dense());
}

TEST(MagneticLaplacian, Errors) {
  EXPECT_THROW(magnetic_laplacian(DirectedGraph(3, {{0, 1, 1.0}}), 0.1, true), IsolatedNode);
  EXPECT_THROW(magnetic_laplacian(DirectedGraph(2), -0.1, false), InvalidArgument);
}

TEST(RelativePotential, Examples) {
  EXPECT_DOUBLE_EQ(relative_potential(make_topology(TopologyName::sequence, 9), 0.25), 0.03125);
  EXPECT_DOUBLE_EQ(relative_potential(make_topology(TopologyName::undirected_sequence, 9), 0.25), 0.25);
  EXPECT_DOUBLE_EQ(relative_potential(make_topology(TopologyName::fully_connected_dag, 4), 0.25), 0.0625);
}

TEST(Rayleigh, QuadraticFormIdentity) {
  Rng rng(5);
  for (int t = 0; t < 50; ++t) {
    const auto g = erdos_renyi(2 + rng.uniform_below(20), 1.0 + rng.uniform01() * 2, false, rng);
    const double q = rng.uniform01() * 0.5;
    const auto lap = magnetic_laplacian(g, q, false);
    const auto x = random_vector(g.num_nodes(), rng);
    double oracle = 0.0;
    const auto sym = symmetrize(g);
    for (const Edge& e : sym.edges()) {
      const double theta =
          2 * std::numbers::pi * q * (double(g.has_edge(e.src, e.dst)) - double(g.has_edge(e.dst, e.src)));
      oracle += 0.5 * e.weight * std::norm(x(e.src) - x(e.dst) * std::exp(kI * theta));
    }
    const double value = rayleigh(lap, x) * x.squaredNorm();
    EXPECT_NEAR(value, oracle, 1e-8 * std::max(1.0, std::abs(oracle)));
  }
  EXPECT_THROW(rayleigh(magnetic_laplacian(DirectedGraph(2), 0, false), Eigen::VectorXcd::Zero(2)),
               InvalidArgument);
}

TEST(EigSmallest, PathEigenvalues) {
  const auto es = eig_smallest(magnetic_laplacian(make_topology(TopologyName::sequence, 4), 0, false), 4);
  for (int j = 0; j < 4; ++j) {
    EXPECT_NEAR(es.eigenvalues(j), 2 - 2 * std::cos(j * std::numbers::pi / 4), 1e-12);
  }
  EXPECT_TRUE(es.real_operator);
}

TEST(EigSmallest, ConstantTrivialEigenvector) {
  const auto g = symmetrize(make_topology(TopologyName::binary_tree, 7));
  const auto es = normalize_eigvecs(eig_smallest(magnetic_laplacian(g, 0, false), 2));
  EXPECT_NEAR(es.eigenvalues(0), 0.0, 1e-12);
  for (int v = 0; v < 7; ++v) EXPECT_NEAR(es.eigenvectors(v, 0).real(), 1 / std::sqrt(7.0), 1e-12);
}

TEST(EigSmallest, SequenceClosedForm) {
  for (std::size_t n = 2; n <= 32; ++n) {
    const auto g = make_topology(TopologyName::sequence, n);
    for (double q : {0.0, 0.25 / double(n - 1)}) {
      const auto lap = magnetic_laplacian(g, q, false);
      const auto es = eig_smallest(lap, n);
      for (std::size_t j = 0; j < n; ++j) {
        const auto oracle = sequence_eigvec_oracle(n, q, j);
        // The oracle is an eigenvector on its own terms.
        const double lambda = sequence_eigval_oracle(n, j);
        EXPECT_LE((lap.matrix * oracle - lambda * oracle).norm(), 1e-10);
        EXPECT_NEAR(es.eigenvalues(long(j)), lambda, 1e-10);
        EXPECT_GE(std::abs(es.eigenvectors.col(long(j)).dot(oracle)), 1 - 1e-6) << n << " " << j;
      }
    }
  }
}

TEST(EigSmallest, OracleSmallCases) {
  auto v = sequence_eigvec_oracle(4, 0.0, 0);
  for (int i = 0; i < 4; ++i) EXPECT_NEAR(std::abs(v(i) - 0.5), 0.0, 1e-15);
  v = sequence_eigvec_oracle(2, 0.25, 0);
  EXPECT_NEAR(std::abs(v(0) - 1 / std::sqrt(2.0)), 0, 1e-15);
  EXPECT_NEAR(std::abs(v(1) + kI / std::sqrt(2.0)), 0, 1e-15);
}

TEST(EigSmallest, DirectedTreesConflictFree) {
  Rng rng(3);
  for (int t = 0; t < 40; ++t) {
    const std::size_t n = 2 + rng.uniform_below(49);
    std::vector<Edge> edges;
    for (std::size_t v = 1; v < n; ++v) {
      const auto parent = static_cast<NodeId>(rng.uniform_below(v));
      if (rng.bernoulli(0.5)) {
        edges.push_back({parent, static_cast<NodeId>(v), 1.0});
      } else {
        edges.push_back({static_cast<NodeId>(v), parent, 1.0});
      }
    }
    const DirectedGraph g(n, edges);
    for (double qr : {0.1, 0.25}) {
      for (bool normalized : {false, true}) {
        const auto es = eig_smallest(magnetic_laplacian(g, relative_potential(g, qr), normalized), 1);
        EXPECT_LE(std::abs(es.eigenvalues(0)), 1e-8);
      }
    }
  }
}

TEST(EigSmallest, PsdResidualsAndUnitNorm) {
  Rng rng(17);
  for (int t = 0; t < 20; ++t) {
    const auto g = erdos_renyi(5 + rng.uniform_below(40), 2.0, false, rng);
    const auto lap = magnetic_laplacian(g, 0.1 + 0.3 * rng.uniform01(), false);
    const auto es = eig_smallest(lap, 5);
    EXPECT_GE(es.eigenvalues(0), -1e-8);
    for (int j = 0; j < 5; ++j) {
      EXPECT_NEAR(es.eigenvectors.col(j).norm(), 1.0, 1e-9);
      const double lam = es.eigenvalues(j);
      EXPECT_LE((lap.matrix * es.eigenvectors.col(j) - lam * es.eigenvectors.col(j)).norm(),
                1e-7 * std::max(1.0, std::abs(lam)));
      if (j > 0) {
        EXPECT_LE(es.eigenvalues(j - 1), lam);
      }
    }
  }
}

TEST(EigSmallest, KrylovMatchesDense) {
  Rng rng(23);
  for (bool normalized : {false, true}) {
    auto g = largest_weak_component(erdos_renyi(700, 3.0, false, rng));
    const auto lap = magnetic_laplacian(g, relative_potential(g, 0.25), normalized);
    EigOptions dense;
    dense.dense_threshold = 100000;
    const auto a = eig_smallest(lap, 10, dense);
    const auto b = eig_smallest(lap, 10);
    for (int j = 0; j < 10; ++j) {
      EXPECT_NEAR(a.eigenvalues(j), b.eigenvalues(j), 1e-9);
      const double lam = b.eigenvalues(j);
      EXPECT_LE((lap.matrix * b.eigenvectors.col(j) - lam * b.eigenvectors.col(j)).norm(),
                1e-7 * std::max(1.0, lam));
    }
    EXPECT_GE(std::abs(a.eigenvectors.col(0).dot(b.eigenvectors.col(0))), 1 - 1e-8);
  }
}

TEST(EigSmallest, PaddingAndClusters) {
  const auto g = make_topology(TopologyName::disconnected_sequences, 6);
  const auto es = eig_smallest(magnetic_laplacian(g, 0, false), 8);
  EXPECT_EQ(es.padding, 2u);
  EXPECT_EQ(es.k(), 8u);
  EXPECT_EQ(es.eigenvectors.col(7).norm(), 0.0);
  // Two components of size 3: eigenvalues {0, 0, 1, 1, 3, 3}.
  ASSERT_EQ(es.degenerate_clusters.size(), 3u);
  EXPECT_EQ(es.degenerate_clusters[0], (std::vector<std::size_t>{0, 1}));
  EXPECT_THROW(eig_smallest(magnetic_laplacian(g, 0, false), 0), InvalidArgument);
}

TEST(Normalize, IdempotentAndAnchored) {
  Rng rng(31);
  for (int t = 0; t < 20; ++t) {
    const auto g = largest_weak_component(erdos_renyi(20, 1.5, t % 2 == 0, rng));
    const auto es = eig_smallest(magnetic_laplacian(g, relative_potential(g, 0.25), false), 5);
    const auto once = normalize_eigvecs(es);
    const auto twice = normalize_eigvecs(once);
    EXPECT_LE((once.eigenvectors - twice.eigenvectors).cwiseAbs().maxCoeff(), 1e-12);
    ASSERT_GE(once.anchor_node, 0);
    for (int j = 0; j < 5; ++j) {
      const Complex z = once.eigenvectors(once.anchor_node, j);
      if (std::abs(z) > 1e-12) {
        EXPECT_NEAR(std::arg(z), 0.0, 1e-12);
      }
    }
    const auto rooted = normalize_eigvecs(es, Anchor::at_root(3));
    for (int j = 0; j < 5; ++j) EXPECT_NEAR(rooted.eigenvectors(3, j).imag(), 0.0, 1e-12);
  }
  EXPECT_THROW(normalize_eigvecs(eig_smallest(magnetic_laplacian(make_topology(TopologyName::sequence, 3),
                                                                  0.1, false),
                                              2),
                                 Anchor::at_root(3)),
               InvalidArgument);
}

TEST(Normalize, EquivariantUnderColumnPhases) {
  Rng rng(37);
  int checked = 0;
  for (int t = 0; t < 40 && checked < 15; ++t) {
    const auto g = largest_weak_component(erdos_renyi(15, 2.0, false, rng));
    const auto es = eig_smallest(magnetic_laplacian(g, relative_potential(g, 0.25), false), 6);
    if (!es.degenerate_clusters.empty() || es.real_operator) continue;
    ++checked;
    auto rotated = es;
    for (int j = 0; j < 6; ++j) rotated.eigenvectors.col(j) *= std::polar(1.0, rng.uniform01() * 6.28);
    const auto a = normalize_eigvecs(es);
    const auto b = normalize_eigvecs(rotated);
    EXPECT_LE((a.eigenvectors - b.eigenvectors).cwiseAbs().maxCoeff(), 1e-7);
  }
  EXPECT_GE(checked, 10);
}

TEST(Normalize, RealOperatorSigns) {
  const auto g = make_topology(TopologyName::trumpet_loop, 12);
  auto es = eig_smallest(magnetic_laplacian(g, 0, false), 6);
  for (int j = 0; j < 6; ++j) es.eigenvectors.col(j) *= std::polar(1.0, 0.7 * j + 0.3);
  const auto out = normalize_eigvecs(es);
  for (int j = 0; j < 6; ++j) {
    Eigen::Index best = 0;
    for (Eigen::Index v = 0; v < 12; ++v) {
      EXPECT_EQ(out.eigenvectors(v, j).imag(), 0.0);
      if (std::abs(out.eigenvectors(v, j).real()) > std::abs(out.eigenvectors(best, j).real()) + 1e-12) best = v;
    }
    EXPECT_GT(out.eigenvectors(best, j).real(), 0.0);
  }
}

TEST(Gft, RoundTripAndIndicator) {
  Rng rng(41);
  const auto g = make_topology(TopologyName::trumpet_forward, 10);
  const auto es = eig_smallest(magnetic_laplacian(g, relative_potential(g, 0.25), true), 10);
  const auto x = random_vector(10, rng);
  const auto back = igft(es, gft(es, x));
  EXPECT_FALSE(back.lossy);
  EXPECT_LE((back.signal - x).norm(), 1e-8);
  const auto coeffs = gft(es, es.eigenvectors.col(3));
  for (int j = 0; j < 10; ++j) EXPECT_NEAR(std::abs(coeffs(j)), j == 3 ? 1.0 : 0.0, 1e-10);

  const auto path = eig_smallest(magnetic_laplacian(make_topology(TopologyName::sequence, 8), 0, false), 8);
  const auto mass = gft(path, Eigen::VectorXcd::Ones(8));
  EXPECT_NEAR(std::abs(mass(0)), std::sqrt(8.0), 1e-10);
  EXPECT_LE(mass.tail(7).norm(), 1e-10);

  const auto partial = eig_smallest(magnetic_laplacian(g, 0.05, false), 4);
  EXPECT_TRUE(igft(partial, gft(partial, x)).lossy);
}

TEST(Reorder, PermutedSequencesRecovered) {
  Rng rng(43);
  for (int t = 0; t < 20; ++t) {
    const std::size_t n = 5 + rng.uniform_below(8);
    const auto perm = rng.permutation(n);
    const auto g = make_topology(TopologyName::sequence, n).permuted(perm);
    EXPECT_EQ(reorder_by_phase(g), perm);
  }
  const auto id = reorder_by_phase(make_topology(TopologyName::sequence, 9));
  for (std::size_t i = 0; i < 9; ++i) EXPECT_EQ(id[i], i);
}

TEST(Reorder, BinaryTreeDepthsNonDecreasing) {
  Rng rng(47);
  for (int t = 0; t < 20; ++t) {
    const auto perm = rng.permutation(9);
    const auto g = make_topology(TopologyName::binary_tree, 9).permuted(perm);
    std::vector<std::size_t> inverse(9);
    for (std::size_t v = 0; v < 9; ++v) inverse[perm[v]] = v;
    int last = -1;
    for (std::size_t node : reorder_by_phase(g)) {
      const int depth = static_cast<int>(std::floor(std::log2(double(inverse[node] + 1))));
      EXPECT_GE(depth, last);
      last = depth;
    }
  }
}

TEST(Svd, RankTwoSequence) {
  const auto rec = svd_encodings(make_topology(TopologyName::sequence, 5), 2).reconstruct();
  EXPECT_LE(std::abs(rec(0, 1)), 1e-9);
  EXPECT_LE(std::abs(rec(3, 4)), 1e-9);
  EXPECT_NEAR(rec(1, 2), 1.0, 1e-9);
  EXPECT_NEAR(rec(2, 3), 1.0, 1e-9);
}

TEST(Svd, FullRankAndEckartYoung) {
  Rng rng(53);
  const auto g = erdos_renyi(8, 2.0, false, rng);
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(8, 8);
  for (const Edge& e : g.edges()) a(e.src, e.dst) = e.weight;
  EXPECT_LE((svd_encodings(g, 8).reconstruct() - a).cwiseAbs().maxCoeff(), 1e-9);

  const auto seq = make_topology(TopologyName::sequence, 3);
  Eigen::MatrixXd s = Eigen::MatrixXd::Zero(3, 3);
  s(0, 1) = s(1, 2) = 1;
  const auto enc = svd_encodings(seq, 1);
  const Eigen::VectorXd sv = Eigen::JacobiSVD<Eigen::MatrixXd>(s).singularValues();
  EXPECT_NEAR((enc.reconstruct() - s).squaredNorm(), sv(1) * sv(1) + sv(2) * sv(2), 1e-12);
  EXPECT_LE((enc.left() * enc.right().transpose() - enc.reconstruct()).norm(), 1e-12);
  EXPECT_THROW(svd_encodings(seq, 4), InvalidArgument);
}

TEST(Sinusoidal, Formula) {
  const auto pe = sinusoidal_pe(50, 16);
  for (int c = 0; c < 16; ++c) EXPECT_EQ(pe(0, c), c % 2 == 0 ? 1.0 : 0.0);
  for (int v = 0; v < 50; ++v) EXPECT_DOUBLE_EQ(pe(v, 1), std::sin(double(v)));
  EXPECT_DOUBLE_EQ(pe(7, 4), std::cos(7.0 / std::pow(10000.0, 4.0 / 16)));
  EXPECT_THROW(sinusoidal_pe(3, 5), InvalidArgument);
}

TEST(Export, CsvAndSidecar) {
  const auto g = make_topology(TopologyName::sequence, 3);
  const auto es = normalize_eigvecs(eig_smallest(magnetic_laplacian(g, 0.125, false), 2));
  std::ostringstream csv;
  write_encoding_csv(csv, es);
  std::string header;
  std::getline(std::istringstream(csv.str()) >> std::ws, header);
  EXPECT_EQ(header, "node,re_0,im_0,re_1,im_1");
  const auto side = encoding_sidecar(es, 0.125, 0.25, false);
  EXPECT_EQ(side["k"], 2);
  EXPECT_EQ(side["q_rel"], 0.25);
  EXPECT_EQ(side["eigenvalues"].size(), 2u);
}

TEST(Bench, OneRowPerCell) {
  BenchConfig cfg;
  cfg.sizes = {20, 40};
  cfg.sparse_k = 5;
  const auto rows = bench_eig(cfg);
  EXPECT_EQ(rows.size(), 2u * 2u * 2u);
  for (const auto& r : rows) EXPECT_GT(r.median_seconds, 0.0);
  cfg.trials = 3;
  EXPECT_THROW(bench_eig(cfg), InvalidArgument);
  cfg.trials = 5;
  cfg.sizes = {40, 20};
  EXPECT_THROW(bench_eig(cfg), InvalidArgument);
}

}  // namespace
}  // namespace dirpe
