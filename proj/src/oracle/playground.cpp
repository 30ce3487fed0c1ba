// SPDX-License-Identifier: Apache-2.0
#include "dirpe/oracle/playground.hpp"

#include <string>

#include "dirpe/core/error.hpp"
#include "dirpe/core/graph_io.hpp"
#include "dirpe/core/provenance.hpp"
#include "dirpe/core/rng.hpp"

namespace dirpe {

std::string_view split_name(Split s) {
  switch (s) {
    case Split::train:
      return "train";
    case Split::val:
      return "val";
    case Split::test:
      return "test";
  }
  return "?";
}

Split parse_split(std::string_view name) {
  if (name == "train") return Split::train;
  if (name == "val" || name == "validation") return Split::val;
  if (name == "test") return Split::test;
  throw InvalidArgument("unknown split '" + std::string(name) + "'");
}

std::string_view scale_name(Scale s) { return s == Scale::paper ? "paper" : "desk"; }

Scale parse_scale(std::string_view name) {
  if (name == "paper") return Scale::paper;
  if (name == "desk") return Scale::desk;
  throw InvalidArgument("unknown scale '" + std::string(name) + "' (expected paper or desk)");
}

NodeRange playground_range(Task task, Split split) {
  if (is_classification(task)) {
    switch (split) {
      case Split::train:
        return {16, 17};
      case Split::val:
        return {18, 19};
      case Split::test:
        return {20, 27};
    }
  }
  switch (split) {
    case Split::train:
      return {16, 63};
    case Split::val:
      return {64, 71};
    case Split::test:
      return {72, 83};
  }
  return {};
}

std::vector<double> playground_degrees(bool dag) {
  if (dag) return {1.0, 1.5, 2.0, 2.5, 3.0};
  return {1.0, 1.5, 2.0};
}

PlaygroundPlan::PlaygroundPlan(const PlaygroundConfig& config)
    : config_(config), range_(playground_range(config.task, config.split)) {
  const std::size_t sizes = range_.hi - range_.lo + 1;
  const std::size_t divisor = config.scale == Scale::paper ? 1 : 100;
  if (config.split == Split::train) {
    total_ = config.count.value_or(400000 / divisor);
    base_ = total_ / sizes;
    remainder_ = total_ % sizes;
  } else {
    base_ = config.count.value_or(2500 / divisor);
    total_ = base_ * sizes;
  }
}

std::size_t PlaygroundPlan::nodes_for(std::size_t index) const {
  if (index >= total_) throw InvalidArgument("record index out of range");
  // The first `remainder_` node counts get one extra record each.
  const std::size_t big = remainder_ * (base_ + 1);
  if (index < big) return range_.lo + index / (base_ + 1);
  return range_.lo + remainder_ + (index - big) / base_;
}

std::uint64_t PlaygroundPlan::seed_for(std::size_t index) const {
  return derive_seed(derive_seed(config_.seed, static_cast<std::uint64_t>(config_.split) + (config_.dag ? 16 : 0)),
                     index);
}

GeneratedRecord playground_record(const PlaygroundConfig& config, const PlaygroundPlan& plan,
                                  std::size_t index) {
  const std::size_t n = plan.nodes_for(index);
  const std::uint64_t seed = plan.seed_for(index);
  const auto degs = playground_degrees(config.dag);
  const DirectedGraph g = sample_graph_with_size(n, degs, config.dag, seed);
  const PairwiseLabels l = labels(g, config.task);

  nlohmann::json record = {{"index", index},
                           {"n", n},
                           {"seed", seed},
                           {"task", task_name(config.task)},
                           {"graph", graph_to_json(g)},
                           {"labels", labels_values_json(l)},
                           {"mask", labels_mask_json(l)}};
  std::size_t valid = 0;
  std::int64_t sum = 0;
  for (std::size_t i = 0; i < l.values.size(); ++i) {
    if (l.mask[i]) {
      ++valid;
      sum += l.values[i];
    }
  }
  return {record.dump(), {{"n", n}, {"pairs", l.values.size()}, {"valid", valid}, {"sum", sum}}};
}

nlohmann::json make_playground_dataset(const PlaygroundConfig& config, const ShardOptions& options) {
  const PlaygroundPlan plan(config);
  const bool classification = is_classification(config.task);
  auto stats = [classification](const std::vector<nlohmann::json>& summaries) {
    std::size_t pairs = 0, valid = 0, min_n = 0, max_n = 0;
    std::int64_t sum = 0;
    for (const auto& s : summaries) {
      const auto n = s["n"].get<std::size_t>();
      min_n = min_n == 0 ? n : std::min(min_n, n);
      max_n = std::max(max_n, n);
      pairs += s["pairs"].get<std::size_t>();
      valid += s["valid"].get<std::size_t>();
      sum += s["sum"].get<std::int64_t>();
    }
    nlohmann::json j = {{"records", summaries.size()}, {"min_n", min_n}, {"max_n", max_n}, {"pairs", pairs}};
    if (classification) {
      j["positive_rate"] = pairs ? static_cast<double>(sum) / static_cast<double>(pairs) : 0.0;
    } else {
      j["valid_rate"] = pairs ? static_cast<double>(valid) / static_cast<double>(pairs) : 0.0;
      j["mean_distance"] = valid ? static_cast<double>(sum) / static_cast<double>(valid) : 0.0;
    }
    return j;
  };
  const auto shards = write_shards(
      options, plan.size(), [&](std::size_t i) { return playground_record(config, plan, i); }, stats);

  const NodeRange range = playground_range(config.task, config.split);
  nlohmann::json params = {{"dataset", "playground"},
                           {"task", task_name(config.task)},
                           {"split", split_name(config.split)},
                           {"graph_kind", config.dag ? "dag" : "general"},
                           {"seed", config.seed},
                           {"scale", scale_name(config.scale)},
                           {"node_range", {range.lo, range.hi}},
                           {"avg_degrees", playground_degrees(config.dag)},
                           {"count", plan.size()}};
  nlohmann::json manifest = {{"provenance", provenance("dataset playground", params)},
                             {"total", plan.size()},
                             {"shards", shards_to_json(shards)}};
  write_manifest(options, manifest);
  return manifest;
}

}  // namespace dirpe
