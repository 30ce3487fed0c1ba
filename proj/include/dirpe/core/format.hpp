// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>

namespace dirpe {

/// Shortest decimal form that round-trips to the same double.
std::string format_double(double value);

}  // namespace dirpe
