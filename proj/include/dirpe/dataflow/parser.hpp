// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <string_view>

#include "dirpe/dataflow/ast.hpp"

namespace dirpe {

/// Parses one function definition (grammar in docs/minilang.md). The body
/// must end in its only return statement. Throws SyntaxError.
MiniProgram parse(std::string_view source);

/// Formats `p` so that parse(to_source(p)) gives the same tree. Uses
/// two-space indentation and the minimal parentheses.
std::string to_source(const MiniProgram& p);
std::string to_source(const Expr& e);

}  // namespace dirpe
