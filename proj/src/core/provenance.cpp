// SPDX-License-Identifier: Apache-2.0
#include "dirpe/core/provenance.hpp"

#ifndef DIRPE_VERSION
#define DIRPE_VERSION "0.0.0"
#endif

namespace dirpe {

std::string library_version() { return DIRPE_VERSION; }

nlohmann::json provenance(const std::string& command, const nlohmann::json& params) {
  return {{"tool", "dirpe"}, {"version", library_version()}, {"command", command}, {"params", params}};
}

}  // namespace dirpe
