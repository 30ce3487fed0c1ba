// SPDX-License-Identifier: Apache-2.0
#include "dirpe/sortnet/dataset.hpp"

#include <map>
#include <string>

#include "dirpe/core/error.hpp"
#include "dirpe/core/graph_io.hpp"
#include "dirpe/core/provenance.hpp"
#include "dirpe/core/rng.hpp"

namespace dirpe {
namespace {

std::size_t group_size(Split split) { return split == Split::train ? 2 : 3; }

constexpr int kGroupRedraws = 1000;

}  // namespace

std::string_view provenance_name(SortnetProvenance p) {
  switch (p) {
    case SortnetProvenance::generated:
      return "generated";
    case SortnetProvenance::last_dropped:
      return "last_dropped";
    case SortnetProvenance::reversed:
      return "reversed";
  }
  return "?";
}

NodeRange sortnet_lengths(const SortnetConfig& config) {
  NodeRange r;
  if (config.lengths) {
    r = *config.lengths;
  } else if (config.split == Split::train) {
    r = {7, 11};
  } else if (config.split == Split::val) {
    r = {12, 12};
  } else {
    r = {13, 16};
  }
  if (r.lo < 2 || r.lo > r.hi || r.hi > kMaxCheckedWires) {
    throw InvalidArgument("sorting network lengths must satisfy 2 <= lo <= hi <= 24");
  }
  return r;
}

std::size_t sortnet_count(const SortnetConfig& config) {
  const std::size_t divisor = config.scale == Scale::paper ? 1 : 100;
  const std::size_t count = config.count.value_or((config.split == Split::train ? 800000 : 60000) / divisor);
  if (count % group_size(config.split) != 0) {
    throw InvalidArgument("sortnet " + std::string(split_name(config.split)) + " count must be a multiple of " +
                          std::to_string(group_size(config.split)));
  }
  return count;
}

std::vector<SortnetRecord> sortnet_group(const SortnetConfig& config, std::size_t group) {
  const NodeRange lengths = sortnet_lengths(config);
  const std::uint64_t split_seed = derive_seed(config.seed, 0x50a7 + static_cast<std::uint64_t>(config.split));
  const std::uint64_t group_seed = derive_seed(split_seed, group);
  for (int draw = 0; draw < kGroupRedraws; ++draw) {
    Rng rng(derive_seed(group_seed, static_cast<std::uint64_t>(draw)));
    const std::size_t p = lengths.lo + rng.uniform_below(lengths.hi - lengths.lo + 1);
    const std::uint64_t net_seed = rng.next_u64();
    const ComparatorNetwork net = generate_network(p, net_seed);

    std::vector<SortnetRecord> records;
    records.push_back({net, is_correct(net), SortnetProvenance::generated, net_seed});
    const auto dropped = drop_last(net);
    records.push_back({dropped, is_correct(dropped), SortnetProvenance::last_dropped, net_seed});
    if (!records[0].label || records[1].label) {
      throw NumericalError("generated network failed its correctness gate (seed " + std::to_string(net_seed) + ")");
    }
    if (config.split != Split::train) {
      const auto rev = reversed(net);
      const bool rev_ok = is_correct(rev);
      if (rev_ok) continue;
      records.push_back({rev, rev_ok, SortnetProvenance::reversed, net_seed});
    }
    return records;
  }
  throw GenerationFailed("every redraw produced a reversible sorting network");
}

SortnetRecord sortnet_record(const SortnetConfig& config, std::size_t index) {
  const std::size_t count = sortnet_count(config);
  if (index >= count) throw InvalidArgument("record index out of range");
  const std::size_t size = group_size(config.split);
  return sortnet_group(config, index / size)[index % size];
}

nlohmann::json sortnet_record_json(const SortnetRecord& r) {
  nlohmann::json comps = nlohmann::json::array();
  for (auto [i, j] : r.network.comparators) comps.push_back({i, j});
  return {{"p", r.network.p},
          {"comparators", std::move(comps)},
          {"label", r.label},
          {"provenance", provenance_name(r.provenance)},
          {"seed", r.seed},
          {"graph", graph_to_json(network_to_graph(r.network))}};
}

nlohmann::json make_sortnet_dataset(const SortnetConfig& config, const ShardOptions& options) {
  const std::size_t count = sortnet_count(config);
  const NodeRange lengths = sortnet_lengths(config);
  auto make = [&](std::size_t i) {
    const auto r = sortnet_record(config, i);
    auto j = sortnet_record_json(r);
    j["index"] = i;
    return GeneratedRecord{j.dump(), {{"label", r.label}, {"p", r.network.p}}};
  };
  auto stats = [](const std::vector<nlohmann::json>& summaries) {
    std::size_t positives = 0;
    std::map<std::string, std::size_t> by_p;
    for (const auto& s : summaries) {
      positives += s["label"].get<bool>() ? 1 : 0;
      ++by_p[std::to_string(s["p"].get<std::size_t>())];
    }
    return nlohmann::json{{"records", summaries.size()},
                          {"positives", positives},
                          {"positive_rate", summaries.empty() ? 0.0
                                                              : static_cast<double>(positives) /
                                                                    static_cast<double>(summaries.size())},
                          {"lengths", by_p}};
  };
  const auto shards = write_shards(options, count, make, stats);

  std::size_t positives = 0;
  for (const auto& s : shards) positives += s.stats["positives"].get<std::size_t>();
  nlohmann::json params = {{"dataset", "sortnet"},
                           {"split", split_name(config.split)},
                           {"seed", config.seed},
                           {"scale", scale_name(config.scale)},
                           {"lengths", {lengths.lo, lengths.hi}},
                           {"count", count}};
  nlohmann::json manifest = {{"provenance", provenance("dataset sortnet", params)},
                             {"total", count},
                             {"positives", positives},
                             {"shards", shards_to_json(shards)}};
  write_manifest(options, manifest);
  return manifest;
}

}  // namespace dirpe
