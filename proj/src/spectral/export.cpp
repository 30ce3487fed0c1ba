// SPDX-License-Identifier: Apache-2.0
#include "dirpe/spectral/export.hpp"

#include "dirpe/core/format.hpp"

namespace dirpe {

void write_encoding_csv(std::ostream& out, const EigenSystem& es) {
  out << "node";
  for (std::size_t j = 0; j < es.k(); ++j) out << ",re_" << j << ",im_" << j;
  out << '\n';
  for (Eigen::Index v = 0; v < es.eigenvectors.rows(); ++v) {
    out << v;
    for (Eigen::Index j = 0; j < es.eigenvectors.cols(); ++j) {
      out << ',' << format_double(es.eigenvectors(v, j).real()) << ','
          << format_double(es.eigenvectors(v, j).imag());
    }
    out << '\n';
  }
}

nlohmann::json encoding_sidecar(const EigenSystem& es, double q, std::optional<double> q_rel,
                                bool normalized_laplacian) {
  nlohmann::json values = nlohmann::json::array();
  for (Eigen::Index j = 0; j < es.eigenvalues.size(); ++j) values.push_back(es.eigenvalues(j));
  nlohmann::json j = {
      {"q", q},
      {"q_rel", q_rel ? nlohmann::json(*q_rel) : nlohmann::json(nullptr)},
      {"k", es.k()},
      {"normalized_laplacian", normalized_laplacian},
      {"eigenvalues", std::move(values)},
      {"padding_columns", es.padding},
      {"degenerate_clusters", es.degenerate_clusters},
      {"eigenvectors_normalized", es.normalized},
  };
  if (es.anchor_node >= 0) j["anchor_node"] = es.anchor_node;
  return j;
}

}  // namespace dirpe
