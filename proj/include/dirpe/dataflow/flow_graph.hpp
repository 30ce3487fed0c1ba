// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <string_view>

#include "dirpe/core/graph.hpp"
#include "dirpe/dataflow/ast.hpp"

namespace dirpe {

inline constexpr std::string_view kMaskToken = "[MASK]";

namespace edge_kind {
inline constexpr std::string_view field = "FIELD";
inline constexpr std::string_view cfg_next = "CFG_NEXT";
inline constexpr std::string_view last_write = "LAST_WRITE";
inline constexpr std::string_view calculated_from = "CALCULATED_FROM";
inline constexpr std::string_view calls = "CALLS";
inline constexpr std::string_view input = "input";
}  // namespace edge_kind

struct FlowGraph {
  DirectedGraph graph;
  /// Node 0 is always the function definition.
  static constexpr NodeId root = 0;
};

/// Data-flow-centric graph of `p` (layout in docs/minilang.md).
///
///  - FIELD edges carry the syntax tree: definition, blocks, statements,
///    assignment targets.
///  - Operator and call operands hang off "input" edges; operands of
///    non-commutative operations after the first are "input:<order>".
///  - Every variable occurrence is its own node. A read has LAST_WRITE edges
///    to each write that may reach it, and an overwrite has LAST_WRITE edges
///    to the writes it replaces. An assigned variable has CALCULATED_FROM
///    edges to the variables read on its right-hand side.
///  - CFG_NEXT links statements of one block by data dependency only, and
///    links the definition or an if statement to the statements of its
///    blocks that depend on nothing else in that block.
///  - A call of the function itself gets a CALLS edge to the definition.
///
/// With `mask_name` every occurrence of the function name becomes
/// kMaskToken. Throws UseBeforeAssignment.
FlowGraph build_graph(const MiniProgram& p, bool mask_name = true);

/// SHA-256 (hex) of the label-aware canonical form. Throws TooLarge past
/// the canonical search budget.
std::string flow_digest(const FlowGraph& g);

}  // namespace dirpe
