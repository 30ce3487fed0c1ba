// SPDX-License-Identifier: Apache-2.0
#include "dirpe/randwalk/random_walk.hpp"

#include <bit>
#include <cstdint>
#include <cstring>

#include "dirpe/core/error.hpp"

namespace dirpe {

TransitionPair transition_pair(const DirectedGraph& g) {
  const auto n = static_cast<Eigen::Index>(g.num_nodes());
  TransitionPair tp;
  tp.forward = Eigen::MatrixXd::Zero(n, n);
  tp.reverse = Eigen::MatrixXd::Zero(n, n);
  const auto deg = degrees(g);
  for (const Edge& e : g.edges()) {
    tp.forward(e.dst, e.src) = e.weight / deg.out[e.src];
    tp.reverse(e.src, e.dst) = e.weight / deg.in[e.dst];
  }
  for (Eigen::Index v = 0; v < n; ++v) {
    if (deg.out[static_cast<std::size_t>(v)] == 0.0) {
      tp.forward(v, v) = 1.0;
      tp.forward_sinks.push_back(static_cast<std::size_t>(v));
    }
    if (deg.in[static_cast<std::size_t>(v)] == 0.0) {
      tp.reverse(v, v) = 1.0;
      tp.reverse_sinks.push_back(static_cast<std::size_t>(v));
    }
  }
  return tp;
}

std::vector<std::string> channel_names(std::size_t k) {
  std::vector<std::string> names{"ppr_R"};
  for (std::size_t j = k; j >= 1; --j) names.push_back("R^" + std::to_string(j));
  for (std::size_t j = 1; j <= k; ++j) names.push_back("T^" + std::to_string(j));
  names.emplace_back("ppr_T");
  return names;
}

Eigen::MatrixXd personalized_pagerank(const Eigen::MatrixXd& transition, double p_r,
                                      std::size_t dense_limit) {
  const auto n = transition.rows();
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(n, n);
  if (static_cast<std::size_t>(n) <= dense_limit) {
    const Eigen::MatrixXd system = id - (1.0 - p_r) * transition;
    return p_r * system.partialPivLu().solve(id);
  }
  // Π = p_r Σ_t (1 - p_r)^t M^t, accumulated term by term.
  Eigen::MatrixXd term = p_r * id;
  Eigen::MatrixXd sum = term;
  for (int t = 1; t < 100000; ++t) {
    term = (1.0 - p_r) * (transition * term);
    sum += term;
    if (term.cwiseAbs().maxCoeff() < 1e-12) return sum;
  }
  throw NumericalError("personalized PageRank series did not converge");
}

RandomWalkFeatures rw_features(const DirectedGraph& g, std::size_t k, double p_r) {
  if (k == 0) throw InvalidArgument("random walk steps k must be >= 1");
  if (!(p_r > 0.0 && p_r < 1.0)) throw InvalidArgument("restart probability must be in (0, 1)");
  const auto tp = transition_pair(g);

  std::vector<Eigen::MatrixXd> fwd{tp.forward};
  std::vector<Eigen::MatrixXd> rev{tp.reverse};
  for (std::size_t j = 1; j < k; ++j) {
    fwd.push_back(tp.forward * fwd.back());
    rev.push_back(tp.reverse * rev.back());
  }

  RandomWalkFeatures f;
  f.n = g.num_nodes();
  f.k = k;
  f.p_r = p_r;
  f.channels.reserve(2 * k + 2);
  f.channels.push_back(personalized_pagerank(tp.reverse, p_r));
  for (std::size_t j = k; j >= 1; --j) f.channels.push_back(rev[j - 1]);
  for (std::size_t j = 1; j <= k; ++j) f.channels.push_back(fwd[j - 1]);
  f.channels.push_back(personalized_pagerank(tp.forward, p_r));
  return f;
}

Eigen::MatrixXd node_encodings(const RandomWalkFeatures& f) {
  Eigen::MatrixXd out(static_cast<Eigen::Index>(f.n), static_cast<Eigen::Index>(f.num_channels()));
  for (std::size_t c = 0; c < f.num_channels(); ++c) {
    out.col(static_cast<Eigen::Index>(c)) = f.channels[c].rowwise().sum();
  }
  return out;
}

std::vector<double> relative_features(const RandomWalkFeatures& f) {
  const std::size_t c_count = f.num_channels();
  std::vector<double> flat(f.n * f.n * c_count);
  std::size_t i = 0;
  for (std::size_t v = 0; v < f.n; ++v) {
    for (std::size_t u = 0; u < f.n; ++u) {
      for (std::size_t c = 0; c < c_count; ++c) flat[i++] = f.at(v, u, c);
    }
  }
  return flat;
}

nlohmann::json tensor_header(const RandomWalkFeatures& f) {
  return {{"n", f.n},
          {"k", f.k},
          {"p_r", f.p_r},
          {"channels", channel_names(f.k)},
          {"layout", "receiver,sender,channel"},
          {"dtype", "float64-le"}};
}

void write_tensor_binary(std::ostream& out, const RandomWalkFeatures& f) {
  static_assert(std::endian::native == std::endian::little, "tensor export assumes little-endian");
  const auto flat = relative_features(f);
  out.write(reinterpret_cast<const char*>(flat.data()), static_cast<std::streamsize>(flat.size() * sizeof(double)));
}

RandomWalkFeatures read_tensor_binary(std::istream& in, const nlohmann::json& header) {
  RandomWalkFeatures f;
  try {
    f.n = header.at("n").get<std::size_t>();
    f.k = header.at("k").get<std::size_t>();
    f.p_r = header.at("p_r").get<double>();
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("bad tensor header: ") + e.what());
  }
  const std::size_t c_count = 2 * f.k + 2;
  std::vector<double> flat(f.n * f.n * c_count);
  in.read(reinterpret_cast<char*>(flat.data()), static_cast<std::streamsize>(flat.size() * sizeof(double)));
  if (in.gcount() != static_cast<std::streamsize>(flat.size() * sizeof(double))) {
    throw InvalidArgument("tensor payload is truncated");
  }
  f.channels.assign(c_count, Eigen::MatrixXd(static_cast<Eigen::Index>(f.n), static_cast<Eigen::Index>(f.n)));
  std::size_t i = 0;
  for (std::size_t v = 0; v < f.n; ++v) {
    for (std::size_t u = 0; u < f.n; ++u) {
      for (std::size_t c = 0; c < c_count; ++c) {
        f.channels[c](static_cast<Eigen::Index>(v), static_cast<Eigen::Index>(u)) = flat[i++];
      }
    }
  }
  return f;
}

}  // namespace dirpe
