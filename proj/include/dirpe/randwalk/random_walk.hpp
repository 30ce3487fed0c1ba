// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include "dirpe/core/graph.hpp"

namespace dirpe {

/// Column-stochastic forward and reverse transition matrices.
///
/// T(u, v) = w(v->u) / d_out(v) is the probability of stepping from v to u;
/// R(u, v) = w(u->v) / d_in(v) walks edges backwards. Nodes without
/// out-edges (for T) or in-edges (for R) get a self-loop in that matrix
/// only; the graph is not modified.
struct TransitionPair {
  Eigen::MatrixXd forward;
  Eigen::MatrixXd reverse;
  std::vector<std::size_t> forward_sinks;
  std::vector<std::size_t> reverse_sinks;
};

TransitionPair transition_pair(const DirectedGraph& g);

inline constexpr std::size_t kDefaultWalkSteps = 3;
inline constexpr double kDefaultRestart = 0.05;

/// Pairwise landing probabilities. channels[c](v, u) is the value for
/// receiver v and sender u; the channel order is
/// [Π(R), R^k, ..., R, T, ..., T^k, Π(T)].
struct RandomWalkFeatures {
  std::size_t n = 0;
  std::size_t k = 0;
  double p_r = kDefaultRestart;
  std::vector<Eigen::MatrixXd> channels;

  std::size_t num_channels() const { return channels.size(); }
  double at(std::size_t receiver, std::size_t sender, std::size_t channel) const {
    return channels[channel](static_cast<Eigen::Index>(receiver), static_cast<Eigen::Index>(sender));
  }
};

/// Channel names in order, e.g. "ppr_R", "R^3", ..., "T^3", "ppr_T".
std::vector<std::string> channel_names(std::size_t k);

/// p_r (I - (1 - p_r) M)^-1. Dense LU up to `dense_limit` nodes, otherwise
/// the geometric series until the update drops below 1e-12 (NumericalError
/// if it does not).
Eigen::MatrixXd personalized_pagerank(const Eigen::MatrixXd& transition, double p_r,
                                      std::size_t dense_limit = 2048);

/// Throws InvalidArgument unless k >= 1 and 0 < p_r < 1.
RandomWalkFeatures rw_features(const DirectedGraph& g, std::size_t k = kDefaultWalkSteps,
                               double p_r = kDefaultRestart);

/// n x (2k+2): for each receiver v and channel, the sum over senders u.
Eigen::MatrixXd node_encodings(const RandomWalkFeatures& f);

/// Receiver-major pairwise tensor flattened as [v][u][c].
std::vector<double> relative_features(const RandomWalkFeatures& f);

/// {"n", "k", "p_r", "channels", "layout", "dtype"}.
nlohmann::json tensor_header(const RandomWalkFeatures& f);
/// Little-endian float64 values of relative_features(f).
void write_tensor_binary(std::ostream& out, const RandomWalkFeatures& f);
/// Inverse of write_tensor_binary given the header fields.
RandomWalkFeatures read_tensor_binary(std::istream& in, const nlohmann::json& header);

}  // namespace dirpe
