#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "streamline/frontend/ast.hpp"

namespace streamline::ir {

using Slot = int;
inline constexpr Slot kNoSlot = -1;

enum class VarKind { Int, Boolean, List, Iterator };

struct Variable {
  std::string name;
  VarKind kind = VarKind::Int;
  bool is_param = false;
  bool is_temp = false;
};

enum class ExprKind { Const, Var, Unary, Binary, Size, Get, HasNext };

struct Expr {
  ExprKind kind = ExprKind::Const;
  std::int32_t value = 0;
  Slot slot = kNoSlot;  // Var, Size/Get list, HasNext iterator
  frontend::UnaryOp unary = frontend::UnaryOp::Neg;
  frontend::BinaryOp binary = frontend::BinaryOp::Add;
  std::vector<Expr> args;  // Unary: 1, Binary: 2, Get: index
};

Expr make_const(std::int32_t value);
Expr make_var(Slot slot);

enum class StmtKind {
  Assign,      // target = args[0]
  NewList,     // target = new list, copy of source when set
  IterInit,    // target = source.iterator()
  Next,        // target (optional) = source.next()
  IterRemove,  // target.remove() on iterator
  Add,         // target.add(args[0], args[1])
  AddLast,     // target.add(args[0])
  Set,         // target.set(args[0], args[1])
  RemoveAt,    // target.remove(args[0])
  Clear,       // target.clear()
  CopyHeap,    // heap_out = copyHeap(heap_in)
  If,          // args[0] ? then_block : else_block
  Loop,        // loops[loop]
  Break,
  Continue,
  Return,      // args optional
};

bool produces_heap(StmtKind kind);

struct Stmt {
  StmtKind kind = StmtKind::Assign;
  Slot target = kNoSlot;
  Slot source = kNoSlot;
  std::vector<Expr> args;
  std::vector<Stmt> then_block;
  std::vector<Stmt> else_block;
  int loop = -1;
  std::string heap_in;
  std::string heap_out;
};

struct Traversal {
  enum class Kind { Iterator, Index };
  Kind kind = Kind::Iterator;
  Slot list = kNoSlot;
  Slot var = kNoSlot;  // iterator or index variable
};

struct Loop {
  int id = 0;
  int parent = -1;
  Expr guard;
  std::vector<Stmt> body;
  std::vector<Stmt> update;  // for-loop update; continue runs it
  std::vector<Traversal> traversals;
  std::string invariant;
};

enum class OutputKind { InPlaceList, FreshList, Int, Boolean };

const char* to_string(OutputKind kind);
inline bool is_list(OutputKind k) {
  return k == OutputKind::InPlaceList || k == OutputKind::FreshList;
}

inline constexpr std::string_view kReturnName = "return";

// An observable effect of the method: a mutated list parameter or the
// returned value.
struct Output {
  std::string name;     // parameter name or "return"
  OutputKind kind = OutputKind::Int;
  Slot slot = kNoSlot;  // parameter slot, or the returned variable
  std::string display;  // name used in pipelines and emitted code
};

struct Program {
  std::string name;
  frontend::TypeKind return_type = frontend::TypeKind::Void;
  std::vector<frontend::Param> signature;
  std::vector<Variable> vars;
  std::vector<Slot> params;  // accessed parameters, declaration order
  std::vector<Stmt> body;
  std::vector<Loop> loops;
  std::vector<Output> outputs;
  std::optional<Slot> return_var;
  std::vector<std::int32_t> literals;

  Slot find(std::string_view name) const;
  const Output* output(std::string_view name) const;
  std::vector<Slot> list_params() const;
  std::vector<Slot> scalar_params() const;
  std::string listing() const;
};

std::string print_expr(const Program& p, const Expr& e);

}  // namespace streamline::ir
