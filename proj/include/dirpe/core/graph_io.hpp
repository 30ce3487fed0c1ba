// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "dirpe/core/graph.hpp"

namespace dirpe {

/// {"n": int, "edges": [[u, v, w], ...], "node_labels": [...]|null,
///  "edge_labels": [...]|null}; edges in (u, v) order.
nlohmann::json graph_to_json(const DirectedGraph& g);

/// Throws InvalidGraph on malformed input. Weights may be omitted ([u, v]).
DirectedGraph graph_from_json(const nlohmann::json& j);

std::string graph_to_string(const DirectedGraph& g);
DirectedGraph graph_from_string(const std::string& text);

}  // namespace dirpe
