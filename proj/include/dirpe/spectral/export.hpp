// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <ostream>

#include <nlohmann/json.hpp>

#include "dirpe/spectral/eigen.hpp"

namespace dirpe {

/// Header "node,re_0,im_0,re_1,im_1,..." then one row per node.
void write_encoding_csv(std::ostream& out, const EigenSystem& es);

/// {"q", "q_rel", "k", "normalized_laplacian", "eigenvalues"} plus solver
/// metadata (padding columns, degenerate clusters, anchor node).
nlohmann::json encoding_sidecar(const EigenSystem& es, double q, std::optional<double> q_rel,
                                bool normalized_laplacian);

}  // namespace dirpe
