// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>

#include <nlohmann/json.hpp>

namespace dirpe {

std::string library_version();

/// {"tool", "version", "command", "params"}. Contains nothing that varies
/// between runs with equal inputs, so outputs stay byte-reproducible.
nlohmann::json provenance(const std::string& command, const nlohmann::json& params);

}  // namespace dirpe
