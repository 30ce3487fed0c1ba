// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace dirpe {

struct GeneratedRecord {
  /// One JSON document without the trailing newline.
  std::string line;
  /// Small per-record tallies folded into the shard statistics.
  nlohmann::json summary;
};

struct ShardOptions {
  std::string out_dir;
  std::string prefix;
  std::size_t shard_size = 1000;
  bool gzip = false;
  std::size_t jobs = 1;
};

struct ShardInfo {
  /// File name relative to out_dir.
  std::string file;
  std::size_t count = 0;
  nlohmann::json stats;
};

/// Writes records [0, count) as JSONL shards <prefix>-NNNNN.jsonl[.gz].
/// Records are produced in parallel but always written in index order.
std::vector<ShardInfo> write_shards(
    const ShardOptions& options, std::size_t count,
    const std::function<GeneratedRecord(std::size_t)>& make_record,
    const std::function<nlohmann::json(const std::vector<nlohmann::json>&)>& shard_stats);

/// Writes `manifest` to <out_dir>/<prefix>-manifest.json and returns the path.
std::string write_manifest(const ShardOptions& options, const nlohmann::json& manifest);

nlohmann::json shards_to_json(const std::vector<ShardInfo>& shards);

}  // namespace dirpe
