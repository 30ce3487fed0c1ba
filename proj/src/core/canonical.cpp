// SPDX-License-Identifier: Apache-2.0
#include "dirpe/core/canonical.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <tuple>
#include <vector>

#include <nlohmann/json.hpp>

#include "dirpe/core/error.hpp"
#include "dirpe/core/format.hpp"

namespace dirpe {
namespace {

/// Adjacency with edge attributes reduced to small integers.
struct Attributed {
  std::size_t n = 0;
  /// Distinct attribute strings in rank order, shared by all graphs built together.
  std::vector<std::string> node_keys, edge_keys;
  std::vector<int> node_attr;
  // (neighbour, edge attribute) lists.
  std::vector<std::vector<std::pair<std::size_t, int>>> out, in;
};

template <class Key>
std::vector<Key> distinct(std::vector<Key> keys) {
  std::sort(keys.begin(), keys.end());
  keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
  return keys;
}

template <class Key>
std::vector<int> rank_keys(const std::vector<Key>& keys) {
  const std::vector<Key> sorted = distinct(keys);
  std::vector<int> ranks(keys.size());
  for (std::size_t i = 0; i < keys.size(); ++i) {
    ranks[i] = static_cast<int>(std::lower_bound(sorted.begin(), sorted.end(), keys[i]) - sorted.begin());
  }
  return ranks;
}

/// Builds attributes for one or more graphs sharing a single attribute
/// numbering, so that colours are comparable across them.
std::vector<Attributed> attribute(const std::vector<const DirectedGraph*>& graphs, bool node_labels,
                                  bool edge_labels, bool weights) {
  std::vector<std::string> node_keys, edge_keys;
  for (const auto* g : graphs) {
    for (std::size_t v = 0; v < g->num_nodes(); ++v) {
      node_keys.push_back(node_labels && g->node_labels() ? (*g->node_labels())[v] : std::string());
    }
    for (std::size_t i = 0; i < g->num_edges(); ++i) {
      std::string key = edge_labels && g->edge_labels() ? (*g->edge_labels())[i] : std::string();
      if (weights) key += "|" + format_double(g->edges()[i].weight);
      edge_keys.push_back(std::move(key));
    }
  }
  const auto node_rank = rank_keys(node_keys);
  const auto edge_rank = rank_keys(edge_keys);
  std::vector<Attributed> out;
  std::size_t node_off = 0, edge_off = 0;
  for (const auto* g : graphs) {
    Attributed a;
    a.n = g->num_nodes();
    a.node_keys = distinct(node_keys);
    a.edge_keys = distinct(edge_keys);
    a.node_attr.assign(node_rank.begin() + static_cast<std::ptrdiff_t>(node_off),
                       node_rank.begin() + static_cast<std::ptrdiff_t>(node_off + a.n));
    a.out.resize(a.n);
    a.in.resize(a.n);
    for (std::size_t i = 0; i < g->num_edges(); ++i) {
      const Edge& e = g->edges()[i];
      const int attr = edge_rank[edge_off + i];
      a.out[e.src].emplace_back(e.dst, attr);
      a.in[e.dst].emplace_back(e.src, attr);
    }
    node_off += a.n;
    edge_off += g->num_edges();
    out.push_back(std::move(a));
  }
  return out;
}

using Signature = std::tuple<int, std::vector<std::pair<int, int>>, std::vector<std::pair<int, int>>>;

/// Refines `colors` of the disjoint union of `parts` to a stable partition.
/// New colours are ranks of (old colour, neighbourhood signature), so the
/// order of existing colours is preserved.
void refine(const std::vector<const Attributed*>& parts, std::vector<int>& colors) {
  std::size_t classes = static_cast<std::size_t>(*std::max_element(colors.begin(), colors.end()) + 1);
  while (true) {
    std::vector<Signature> sigs;
    sigs.reserve(colors.size());
    std::size_t off = 0;
    for (const auto* a : parts) {
      for (std::size_t v = 0; v < a->n; ++v) {
        std::vector<std::pair<int, int>> o, i;
        o.reserve(a->out[v].size());
        i.reserve(a->in[v].size());
        for (auto [w, attr] : a->out[v]) o.emplace_back(colors[off + w], attr);
        for (auto [w, attr] : a->in[v]) i.emplace_back(colors[off + w], attr);
        std::sort(o.begin(), o.end());
        std::sort(i.begin(), i.end());
        sigs.emplace_back(colors[off + v], std::move(o), std::move(i));
      }
      off += a->n;
    }
    colors = rank_keys(sigs);
    const auto now = static_cast<std::size_t>(*std::max_element(colors.begin(), colors.end()) + 1);
    if (now == classes) return;
    classes = now;
  }
}

std::string certificate(const Attributed& a, const std::vector<int>& colors) {
  // Discrete partition: colour is the node's canonical position.
  std::vector<std::size_t> node_at(a.n);
  for (std::size_t v = 0; v < a.n; ++v) node_at[static_cast<std::size_t>(colors[v])] = v;
  std::string cert = nlohmann::json{a.node_keys, a.edge_keys}.dump() + ";" + std::to_string(a.n) + ";";
  for (std::size_t pos = 0; pos < a.n; ++pos) cert += std::to_string(a.node_attr[node_at[pos]]) + ",";
  std::vector<std::tuple<int, int, int>> edges;
  for (std::size_t v = 0; v < a.n; ++v) {
    for (auto [w, attr] : a.out[v]) edges.emplace_back(colors[v], colors[w], attr);
  }
  std::sort(edges.begin(), edges.end());
  cert += ";";
  for (auto [u, v, attr] : edges) {
    cert += std::to_string(u) + ">" + std::to_string(v) + ":" + std::to_string(attr) + ",";
  }
  return cert;
}

struct Search {
  const Attributed& a;
  std::size_t budget;
  std::size_t visited = 0;
  std::optional<std::string> best;

  void run(std::vector<int> colors) {
    if (++visited > budget) {
      throw TooLarge("canonical form search exceeded its budget of " + std::to_string(budget) + " nodes");
    }
    refine({&a}, colors);
    // Target cell: the smallest non-singleton colour class, lowest colour first.
    std::map<int, std::vector<std::size_t>> cells;
    for (std::size_t v = 0; v < a.n; ++v) cells[colors[v]].push_back(v);
    const std::vector<std::size_t>* target = nullptr;
    for (const auto& [c, members] : cells) {
      if (members.size() > 1 && (target == nullptr || members.size() < target->size())) target = &members;
    }
    if (target == nullptr) {
      std::string cert = certificate(a, colors);
      if (!best || cert < *best) best = std::move(cert);
      return;
    }
    const std::vector<std::size_t> branch = *target;
    for (std::size_t v : branch) {
      // Individualize v: it moves ahead of the rest of its cell.
      std::vector<std::pair<int, int>> keys(a.n);
      for (std::size_t w = 0; w < a.n; ++w) keys[w] = {colors[w], w == v ? 0 : 1};
      run(rank_keys(keys));
    }
  }
};

}  // namespace

std::string canonical_form(const DirectedGraph& g, const CanonicalOptions& options) {
  const auto attrs = attribute({&g}, options.node_labels, options.edge_labels, options.weights);
  const Attributed& a = attrs[0];
  if (a.n == 0) return certificate(a, {});
  Search search{a, options.search_budget, 0, std::nullopt};
  search.run(a.node_attr);
  return *search.best;
}

namespace {

struct Matcher {
  const Attributed& a;
  const Attributed& b;
  std::vector<int> color_a, color_b;
  std::vector<std::size_t> order;
  std::vector<std::ptrdiff_t> map_ab, map_ba;
  std::vector<std::map<std::size_t, std::vector<int>>> out_a, out_b;

  static std::vector<std::map<std::size_t, std::vector<int>>> edge_maps(const Attributed& g) {
    std::vector<std::map<std::size_t, std::vector<int>>> m(g.n);
    for (std::size_t v = 0; v < g.n; ++v) {
      for (auto [w, attr] : g.out[v]) m[v][w].push_back(attr);
    }
    return m;
  }

  bool consistent(std::size_t u, std::size_t x) const {
    // Edges between u and every already mapped node must correspond.
    for (auto [w, attr] : a.out[u]) {
      const auto mw = w == u ? static_cast<std::ptrdiff_t>(x) : map_ab[w];
      if (mw < 0) continue;
      const auto it = out_b[x].find(static_cast<std::size_t>(mw));
      if (it == out_b[x].end() || it->second != out_a[u].at(w)) return false;
    }
    for (auto [w, attr] : a.in[u]) {
      if (w == u || map_ab[w] < 0) continue;
      const auto mw = static_cast<std::size_t>(map_ab[w]);
      const auto it = out_b[mw].find(x);
      if (it == out_b[mw].end() || it->second != out_a[w].at(u)) return false;
    }
    // And the reverse direction, so b has no extra edges.
    for (auto [y, attr] : b.out[x]) {
      const auto my = y == x ? static_cast<std::ptrdiff_t>(u) : map_ba[y];
      if (my < 0) continue;
      if (out_a[u].find(static_cast<std::size_t>(my)) == out_a[u].end()) return false;
    }
    for (auto [y, attr] : b.in[x]) {
      if (y == x || map_ba[y] < 0) continue;
      if (out_a[static_cast<std::size_t>(map_ba[y])].find(u) == out_a[static_cast<std::size_t>(map_ba[y])].end()) {
        return false;
      }
    }
    return true;
  }

  bool extend(std::size_t depth) {
    if (depth == order.size()) return true;
    const std::size_t u = order[depth];
    for (std::size_t x = 0; x < b.n; ++x) {
      if (map_ba[x] >= 0 || color_b[x] != color_a[u] || !consistent(u, x)) continue;
      map_ab[u] = static_cast<std::ptrdiff_t>(x);
      map_ba[x] = static_cast<std::ptrdiff_t>(u);
      if (extend(depth + 1)) return true;
      map_ab[u] = -1;
      map_ba[x] = -1;
    }
    return false;
  }
};

}  // namespace

bool isomorphic(const DirectedGraph& ga, const DirectedGraph& gb, bool use_labels) {
  if (ga.num_nodes() != gb.num_nodes() || ga.num_edges() != gb.num_edges()) return false;
  const std::size_t n = ga.num_nodes();
  if (n == 0) return true;
  const auto attrs = attribute({&ga, &gb}, use_labels, use_labels, false);
  const Attributed& a = attrs[0];
  const Attributed& b = attrs[1];
  std::vector<int> colors(a.node_attr);
  colors.insert(colors.end(), b.node_attr.begin(), b.node_attr.end());
  refine({&a, &b}, colors);

  Matcher m{a, b, {colors.begin(), colors.begin() + static_cast<std::ptrdiff_t>(n)},
            {colors.begin() + static_cast<std::ptrdiff_t>(n), colors.end()}, {}, std::vector<std::ptrdiff_t>(n, -1),
            std::vector<std::ptrdiff_t>(n, -1), Matcher::edge_maps(a), Matcher::edge_maps(b)};
  auto ca = m.color_a, cb = m.color_b;
  std::sort(ca.begin(), ca.end());
  std::sort(cb.begin(), cb.end());
  if (ca != cb) return false;

  // Match in BFS order over the underlying undirected graph so each new
  // node is usually adjacent to mapped ones.
  std::vector<bool> placed(n, false);
  for (std::size_t root = 0; root < n; ++root) {
    if (placed[root]) continue;
    std::vector<std::size_t> queue{root};
    placed[root] = true;
    for (std::size_t i = 0; i < queue.size(); ++i) {
      const std::size_t v = queue[i];
      m.order.push_back(v);
      for (const auto* list : {&a.out[v], &a.in[v]}) {
        for (auto [w, attr] : *list) {
          if (!placed[w]) {
            placed[w] = true;
            queue.push_back(w);
          }
        }
      }
    }
  }
  return m.extend(0);
}

}  // namespace dirpe
