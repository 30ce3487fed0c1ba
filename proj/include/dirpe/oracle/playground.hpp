// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>

#include <nlohmann/json.hpp>

#include "dirpe/core/generators.hpp"
#include "dirpe/core/shards.hpp"
#include "dirpe/oracle/labels.hpp"

namespace dirpe {

enum class Split { train, val, test };
enum class Scale { paper, desk };

std::string_view split_name(Split s);
/// Accepts train, val (or validation) and test; throws InvalidArgument otherwise.
Split parse_split(std::string_view name);
std::string_view scale_name(Scale s);
Scale parse_scale(std::string_view name);

struct PlaygroundConfig {
  Task task = Task::reachability;
  Split split = Split::train;
  bool dag = false;
  std::uint64_t seed = 0;
  Scale scale = Scale::desk;
  /// Overrides the default count: total records for train, records per
  /// node count for val/test.
  std::optional<std::size_t> count;
};

/// Node-count range of a split: 16-63 / 64-71 / 72-83 for the distance
/// tasks and 16-17 / 18-19 / 20-27 for the classification tasks.
NodeRange playground_range(Task task, Split split);

/// Average degrees {1, 1.5, 2} for general graphs, {1, ..., 3} for DAGs.
std::vector<double> playground_degrees(bool dag);

/// Record count and node count per record. Train records are spread evenly
/// over the node counts (remainder to the smallest); val/test use a fixed
/// number per node count. Paper scale: 400,000 train and 2,500 per n;
/// desk scale divides both by 100.
class PlaygroundPlan {
 public:
  explicit PlaygroundPlan(const PlaygroundConfig& config);
  std::size_t size() const { return total_; }
  std::size_t nodes_for(std::size_t index) const;
  std::uint64_t seed_for(std::size_t index) const;

 private:
  PlaygroundConfig config_;
  NodeRange range_;
  std::size_t total_ = 0;
  std::size_t base_ = 0;
  std::size_t remainder_ = 0;
};

/// One JSONL record {graph, task, labels, mask, seed, index, n}.
GeneratedRecord playground_record(const PlaygroundConfig& config, const PlaygroundPlan& plan,
                                  std::size_t index);

/// Writes the shards plus a manifest and returns the manifest.
nlohmann::json make_playground_dataset(const PlaygroundConfig& config, const ShardOptions& options);

}  // namespace dirpe
