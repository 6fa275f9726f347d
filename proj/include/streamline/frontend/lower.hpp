#pragma once

#include <string_view>

#include "streamline/frontend/ast.hpp"
#include "streamline/frontend/ir.hpp"

namespace streamline::frontend {

// Resolves names, checks types and definite assignment, desugars enhanced
// for loops and extracts iterator advances into their own statements.
// Throws BindingError, TypeError or UnsupportedConstruct.
ir::Program lower(const MiniJProgram& program);

// parse + lower.
ir::Program compile(std::string_view source);

}  // namespace streamline::frontend
