// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "dirpe/dataflow/ast.hpp"

namespace dirpe {

/// Array of doubles; length 1 broadcasts against any length.
using MiniValue = std::vector<double>;

/// Reference evaluator. Comparisons give 0/1, `&`, `|` and `~` act on the
/// values truncated to 64-bit integers, `**` is pow. Builtins: sum, min,
/// max, abs, sqrt, exp, log (also as methods, e.g. `x.sum()`) and calls of
/// the program itself (depth limit 200). If
/// conditions must be scalars. Throws InvalidArgument for unknown calls,
/// length mismatches or a wrong argument count.
MiniValue interpret(const MiniProgram& p, const std::vector<MiniValue>& args);

/// Element-wise equality that treats NaNs with equal bits as equal.
bool same_value(const MiniValue& a, const MiniValue& b);

}  // namespace dirpe
