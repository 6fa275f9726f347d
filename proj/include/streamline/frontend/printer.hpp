#pragma once

#include <string>

#include "streamline/frontend/ast.hpp"

namespace streamline::frontend {

std::string print_expr(const Expr& e);

// Prints a statement at the given indentation depth, one trailing newline.
std::string print_stmt(const Stmt& s, int depth);

std::string print_signature(const MiniJProgram& p);
std::string print_program(const MiniJProgram& p);

}  // namespace streamline::frontend
