// SPDX-License-Identifier: Apache-2.0
#include "dirpe/sortnet/network.hpp"

#include <algorithm>
#include <bit>
#include <cstdlib>
#include <string>

#include "dirpe/core/error.hpp"
#include "dirpe/core/rng.hpp"

namespace dirpe {
namespace {

using Mask = std::uint32_t;

/// Bit i+1 set where wire i holds 1 and wire i+1 holds 0.
Mask violations(Mask m, Mask full) { return ((m << 1) & full) & ~m; }

Mask apply(Mask m, Comparator c) {
  const Mask bu = (m >> c.first) & 1u;
  const Mask bv = (m >> c.second) & 1u;
  if (bu == 1 && bv == 0) m ^= (Mask{1} << c.first) | (Mask{1} << c.second);
  return m;
}

void check_wires(std::size_t p) {
  if (p > kMaxCheckedWires) {
    throw WireCountTooLarge("exhaustive check supports at most " + std::to_string(kMaxCheckedWires) +
                            " wires, got " + std::to_string(p));
  }
}

}  // namespace

ComparatorNetwork make_network(std::size_t p, const std::vector<Comparator>& comparators) {
  ComparatorNetwork c{p, {}};
  c.comparators.reserve(comparators.size());
  for (auto [a, b] : comparators) {
    if (a == b || a >= p || b >= p) {
      throw InvalidArgument("invalid comparator (" + std::to_string(a) + ", " + std::to_string(b) +
                            ") for p=" + std::to_string(p));
    }
    c.comparators.emplace_back(std::min(a, b), std::max(a, b));
  }
  return c;
}

bool is_correct(const ComparatorNetwork& c) {
  check_wires(c.p);
  const std::size_t p = c.p;
  if (p <= 1) return true;
  // Bit-sliced: lane l of word w[k] is wire k of input (batch * 64 + l).
  static constexpr std::uint64_t kLow[6] = {0xAAAAAAAAAAAAAAAAull, 0xCCCCCCCCCCCCCCCCull, 0xF0F0F0F0F0F0F0F0ull,
                                            0xFF00FF00FF00FF00ull, 0xFFFF0000FFFF0000ull, 0xFFFFFFFF00000000ull};
  const std::uint64_t inputs = std::uint64_t{1} << p;
  const std::uint64_t lanes = inputs < 64 ? (std::uint64_t{1} << inputs) - 1 : ~std::uint64_t{0};
  std::vector<std::uint64_t> w(p);
  for (std::uint64_t batch = 0; batch * 64 < inputs; ++batch) {
    for (std::size_t k = 0; k < p; ++k) {
      w[k] = k < 6 ? kLow[k] : (((batch << 6) >> k) & 1u ? ~std::uint64_t{0} : 0);
    }
    for (auto [u, v] : c.comparators) {
      const std::uint64_t lo = w[u] & w[v];
      w[v] |= w[u];
      w[u] = lo;
    }
    for (std::size_t k = 0; k + 1 < p; ++k) {
      if ((w[k] & ~w[k + 1] & lanes) != 0) return false;
    }
  }
  return true;
}

ComparatorNetwork generate_network(std::size_t p, std::uint64_t seed) {
  if (p < 2 || p > kMaxCheckedWires) throw InvalidArgument("generate_network needs 2 <= p <= 24");
  Rng rng(seed);
  const Mask full = (Mask{1} << p) - 1;
  std::vector<std::uint8_t> seen(std::size_t{1} << p);

  for (int attempt = 0; attempt < kGenerationRetries; ++attempt) {
    ComparatorNetwork net{p, {}};
    std::vector<Mask> outputs;
    for (Mask m = 0; m <= full; ++m) {
      if (violations(m, full) != 0) outputs.push_back(m);
      if (m == full) break;
    }
    while (!outputs.empty() && net.comparators.size() < kMaxComparators) {
      Mask where = 0;
      for (Mask m : outputs) {
        const Mask v = violations(m, full);
        where |= v | (v >> 1);
      }
      std::vector<std::uint32_t> locations;
      for (std::uint32_t k = 0; k < p; ++k) {
        if ((where >> k) & 1u) locations.push_back(k);
      }
      const auto a = rng.uniform_below(locations.size());
      auto b = rng.uniform_below(locations.size() - 1);
      if (b >= a) ++b;
      const Comparator cmp{std::min(locations[a], locations[b]), std::max(locations[a], locations[b])};
      if (!net.comparators.empty() && net.comparators.back() == cmp) continue;
      net.comparators.push_back(cmp);

      std::vector<Mask> next;
      next.reserve(outputs.size());
      for (Mask m : outputs) {
        const Mask out = apply(m, cmp);
        if (violations(out, full) != 0 && !seen[out]) {
          seen[out] = 1;
          next.push_back(out);
        }
      }
      for (Mask m : next) seen[m] = 0;
      outputs = std::move(next);
    }
    if (outputs.empty()) return net;
  }
  throw GenerationFailed("no sorting network within " + std::to_string(kMaxComparators) + " comparators after " +
                         std::to_string(kGenerationRetries) + " attempts (p=" + std::to_string(p) + ")");
}

ComparatorNetwork batcher(std::size_t p) {
  if (p < 2) throw InvalidArgument("batcher needs p >= 2");
  ComparatorNetwork net{p, {}};
  for (std::size_t half = 1; half < p; half *= 2) {
    for (std::size_t k = half; k >= 1; k /= 2) {
      for (std::size_t j = k % half; j + k < p; j += 2 * k) {
        for (std::size_t i = 0; i < std::min(k, p - j - k); ++i) {
          if ((i + j) / (2 * half) == (i + j + k) / (2 * half)) {
            net.comparators.emplace_back(static_cast<std::uint32_t>(i + j), static_cast<std::uint32_t>(i + j + k));
          }
        }
      }
    }
  }
  return net;
}

ComparatorNetwork drop_last(const ComparatorNetwork& c) {
  ComparatorNetwork out = c;
  if (!out.comparators.empty()) out.comparators.pop_back();
  return out;
}

ComparatorNetwork reversed(const ComparatorNetwork& c) {
  ComparatorNetwork out = c;
  std::reverse(out.comparators.begin(), out.comparators.end());
  return out;
}

DirectedGraph network_to_graph(const ComparatorNetwork& c) {
  constexpr auto kNone = static_cast<NodeId>(-1);
  std::vector<NodeId> last(c.p, kNone);
  std::vector<Edge> edges;
  std::vector<std::string> labels;
  labels.reserve(c.comparators.size());
  for (std::size_t idx = 0; idx < c.comparators.size(); ++idx) {
    const auto [i, j] = c.comparators[idx];
    const auto node = static_cast<NodeId>(idx);
    const NodeId a = last[i];
    const NodeId b = last[j];
    if (a != kNone) edges.push_back({a, node, 1.0});
    if (b != kNone && b != a) edges.push_back({b, node, 1.0});
    last[i] = last[j] = node;
    labels.push_back(std::to_string(i) + "," + std::to_string(j));
  }
  return DirectedGraph(c.comparators.size(), std::move(edges), std::move(labels));
}

double near_sequentiality(const DirectedGraph& g) {
  if (g.num_edges() == 0) return 0.0;
  double sum = 0.0;
  for (const Edge& e : g.edges()) sum += std::abs(static_cast<double>(e.src) - static_cast<double>(e.dst));
  return sum / static_cast<double>(g.num_edges());
}

}  // namespace dirpe
