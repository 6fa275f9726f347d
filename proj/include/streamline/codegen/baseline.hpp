#pragma once

#include <string>
#include <variant>

#include "streamline/frontend/ast.hpp"

namespace streamline::codegen {

struct BaselineMatch {
  std::string pattern;  // indexed-filter-map, iterator-filter-map, iterator-remove
  std::string java;
};

struct NoMatch {
  std::string reason;
};

using BaselineResult = std::variant<BaselineMatch, NoMatch>;

// Syntactic template matcher: recognises three fixed loop shapes and
// rewrites them to streams without looking at what the code computes.
BaselineResult emit_pattern_baseline(const frontend::MiniJProgram& p);

}  // namespace streamline::codegen
