#pragma once

#include <string_view>

#include "streamline/frontend/ast.hpp"

namespace streamline::frontend {

// Parses a single MiniJ method. Throws SyntaxError or UnsupportedConstruct.
MiniJProgram parse(std::string_view source);

}  // namespace streamline::frontend
