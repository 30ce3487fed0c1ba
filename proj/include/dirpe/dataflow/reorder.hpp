// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <vector>

#include "dirpe/core/topo_sort.hpp"
#include "dirpe/dataflow/ast.hpp"

namespace dirpe {

struct ReorderOptions {
  /// Also swap operands of commutative operators (==, &, |, +, *).
  bool commutative = true;
  /// Programs are only materialized when the count is at most this.
  std::size_t limit = 100000;
};

struct Reorderings {
  BigCount count = 0;
  /// Empty when truncated.
  std::vector<MiniProgram> programs;
  bool truncated = false;
};

/// Statement orders of a block keep every pair that shares a variable
/// written by at least one of them (read-after-write, write-after-read,
/// write-after-write); the return stays last. Blocks nested in if
/// statements are reordered independently. An operand swap is counted only
/// when both operands are non-constant and differ, so `2 * x` has one
/// spelling. The input program is always the first variant.
BigCount count_reorderings(const MiniProgram& p, bool commutative = true);
Reorderings enumerate_reorderings(const MiniProgram& p, const ReorderOptions& options = {});

}  // namespace dirpe
