// SPDX-License-Identifier: Apache-2.0
#include "dirpe/core/graph_io.hpp"

#include <utility>
#include <vector>

#include "dirpe/core/error.hpp"

namespace dirpe {
namespace {

nlohmann::json labels_to_json(const Labels& labels) {
  if (!labels) return nullptr;
  return *labels;
}

Labels labels_from_json(const nlohmann::json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  const auto& arr = j.at(key);
  if (!arr.is_array()) throw InvalidGraph(std::string(key) + " must be an array or null");
  std::vector<std::string> out;
  out.reserve(arr.size());
  for (const auto& item : arr) {
    if (item.is_string()) {
      out.push_back(item.get<std::string>());
    } else if (item.is_number_integer()) {
      out.push_back(std::to_string(item.get<long long>()));
    } else {
      throw InvalidGraph(std::string(key) + " entries must be strings or integers");
    }
  }
  return out;
}

}  // namespace

nlohmann::json graph_to_json(const DirectedGraph& g) {
  nlohmann::json edges = nlohmann::json::array();
  for (const Edge& e : g.edges()) edges.push_back({e.src, e.dst, e.weight});
  return {{"n", g.num_nodes()},
          {"edges", std::move(edges)},
          {"node_labels", labels_to_json(g.node_labels())},
          {"edge_labels", labels_to_json(g.edge_labels())}};
}

DirectedGraph graph_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw InvalidGraph("graph JSON must be an object");
  if (!j.contains("n") || !j.at("n").is_number_unsigned()) {
    throw InvalidGraph("graph JSON needs a non-negative integer 'n'");
  }
  const auto n = j.at("n").get<std::size_t>();
  std::vector<Edge> edges;
  if (j.contains("edges")) {
    const auto& arr = j.at("edges");
    if (!arr.is_array()) throw InvalidGraph("'edges' must be an array");
    edges.reserve(arr.size());
    for (const auto& item : arr) {
      if (!item.is_array() || item.size() < 2 || item.size() > 3 || !item[0].is_number_integer() ||
          !item[1].is_number_integer() || (item.size() == 3 && !item[2].is_number())) {
        throw InvalidGraph("edges must be [u, v] or [u, v, w], got " + item.dump());
      }
      const auto u = item[0].get<long long>();
      const auto v = item[1].get<long long>();
      if (u < 0 || v < 0 || static_cast<unsigned long long>(u) >= n ||
          static_cast<unsigned long long>(v) >= n) {
        throw InvalidGraph("edge " + item.dump() + " out of range for n=" + std::to_string(n));
      }
      edges.push_back({static_cast<NodeId>(u), static_cast<NodeId>(v),
                       item.size() == 3 ? item[2].get<double>() : 1.0});
    }
  }
  return DirectedGraph(n, std::move(edges), labels_from_json(j, "node_labels"),
                       labels_from_json(j, "edge_labels"));
}

std::string graph_to_string(const DirectedGraph& g) { return graph_to_json(g).dump(); }

DirectedGraph graph_from_string(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InvalidGraph(std::string("graph JSON parse error: ") + e.what());
  }
  return graph_from_json(j);
}

}  // namespace dirpe
