// SPDX-License-Identifier: Apache-2.0
#include "dirpe/core/format.hpp"

#include <array>
#include <charconv>
#include <cmath>

namespace dirpe {

std::string format_double(double value) {
  if (value == 0.0) return "0";  // also folds -0
  if (std::isnan(value)) return "nan";
  std::array<char, 32> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  return std::string(buf.data(), res.ptr);
}

}  // namespace dirpe
