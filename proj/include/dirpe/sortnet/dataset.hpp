// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>

#include <nlohmann/json.hpp>

#include "dirpe/core/generators.hpp"
#include "dirpe/core/shards.hpp"
#include "dirpe/oracle/playground.hpp"
#include "dirpe/sortnet/network.hpp"

namespace dirpe {

enum class SortnetProvenance { generated, last_dropped, reversed };

std::string_view provenance_name(SortnetProvenance p);

struct SortnetRecord {
  ComparatorNetwork network;
  bool label = false;
  SortnetProvenance provenance = SortnetProvenance::generated;
  /// Seed passed to generate_network for the source network.
  std::uint64_t seed = 0;
};

struct SortnetConfig {
  Split split = Split::train;
  std::uint64_t seed = 0;
  Scale scale = Scale::desk;
  /// Total records; defaults to 800,000 train and 60,000 val/test at
  /// paper scale, a hundredth of that at desk scale.
  std::optional<std::size_t> count;
  /// Defaults: 7-11 train, 12 val, 13-16 test.
  std::optional<NodeRange> lengths;
};

NodeRange sortnet_lengths(const SortnetConfig& config);
std::size_t sortnet_count(const SortnetConfig& config);

/// Records come in groups sharing one generated network: train groups are
/// (correct, last dropped), val/test groups add the reversed network. A
/// val/test group whose reversal still sorts is discarded and redrawn so
/// the correct fraction stays exactly 1/3. Every label is recomputed with
/// is_correct.
std::vector<SortnetRecord> sortnet_group(const SortnetConfig& config, std::size_t group);

/// Record `index` in emission order. Throws InvalidArgument when the total
/// count is not a multiple of the group size.
SortnetRecord sortnet_record(const SortnetConfig& config, std::size_t index);

nlohmann::json sortnet_record_json(const SortnetRecord& r);

nlohmann::json make_sortnet_dataset(const SortnetConfig& config, const ShardOptions& options);

}  // namespace dirpe
