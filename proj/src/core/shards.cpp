// SPDX-License-Identifier: Apache-2.0
#include "dirpe/core/shards.hpp"

#include <cstdio>
#include <filesystem>

#include "dirpe/core/error.hpp"
#include "dirpe/core/parallel.hpp"
#include "dirpe/core/text_output.hpp"

namespace dirpe {

std::vector<ShardInfo> write_shards(
    const ShardOptions& options, std::size_t count,
    const std::function<GeneratedRecord(std::size_t)>& make_record,
    const std::function<nlohmann::json(const std::vector<nlohmann::json>&)>& shard_stats) {
  if (options.shard_size == 0) throw InvalidArgument("shard size must be positive");
  std::error_code ec;
  std::filesystem::create_directories(options.out_dir, ec);
  if (ec) throw InvalidArgument("cannot create '" + options.out_dir + "': " + ec.message());

  std::vector<ShardInfo> shards;
  for (std::size_t start = 0, index = 0; start < count || (count == 0 && index == 0); ++index) {
    const std::size_t n = std::min(options.shard_size, count - start);
    char name[32];
    std::snprintf(name, sizeof name, "-%05zu.jsonl", index);
    ShardInfo info;
    info.file = options.prefix + name + (options.gzip ? ".gz" : "");
    info.count = n;
    const auto records = parallel_map<GeneratedRecord>(
        n, options.jobs, [&](std::size_t i) { return make_record(start + i); });
    TextOutput out((std::filesystem::path(options.out_dir) / info.file).string(), options.gzip);
    std::vector<nlohmann::json> summaries;
    summaries.reserve(n);
    for (const auto& r : records) {
      out.write(r.line);
      out.write("\n");
      summaries.push_back(r.summary);
    }
    out.close();
    info.stats = shard_stats(summaries);
    shards.push_back(std::move(info));
    start += n;
    if (count == 0) break;
  }
  return shards;
}

std::string write_manifest(const ShardOptions& options, const nlohmann::json& manifest) {
  const auto path = (std::filesystem::path(options.out_dir) / (options.prefix + "-manifest.json")).string();
  TextOutput out(path, false);
  out.write(manifest.dump(2));
  out.write("\n");
  out.close();
  return path;
}

nlohmann::json shards_to_json(const std::vector<ShardInfo>& shards) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& s : shards) arr.push_back({{"file", s.file}, {"count", s.count}, {"stats", s.stats}});
  return arr;
}

}  // namespace dirpe
