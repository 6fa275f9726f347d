#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "streamline/frontend/errors.hpp"

namespace streamline::frontend {

enum class TypeKind { Void, Int, Boolean, List, Iterator };

const char* java_type_name(TypeKind type);

enum class ExprKind {
  IntLiteral,
  BoolLiteral,
  NamedConstant,  // Integer.MIN_VALUE / Integer.MAX_VALUE
  Variable,
  Unary,
  Binary,
  Call,
  NewList,
};

enum class UnaryOp { Neg, Not };

enum class BinaryOp { Add, Sub, Mul, Div, Mod, Lt, Le, Gt, Ge, Eq, Ne, And, Or };

enum class Method {
  Size,
  Get,
  HasNext,
  Next,
  Iterator,
  IntValue,
  Add,
  Set,
  Clear,
  Remove,
};

const char* to_string(UnaryOp op);
const char* to_string(BinaryOp op);
const char* to_string(Method method);

struct Expr;
using ExprPtr = std::unique_ptr<Expr>;

struct Expr {
  ExprKind kind = ExprKind::IntLiteral;
  Position pos;
  std::int64_t value = 0;  // IntLiteral, BoolLiteral
  std::string name;        // Variable, NamedConstant
  UnaryOp unary = UnaryOp::Neg;
  BinaryOp binary = BinaryOp::Add;
  Method method = Method::Size;
  // Unary: [operand]. Binary: [lhs, rhs]. Call: [receiver, args...].
  // NewList: [] or [copied list].
  std::vector<ExprPtr> operands;

  ExprPtr clone() const;
};

ExprPtr make_int(std::int64_t value, Position pos = {});
ExprPtr make_bool(bool value, Position pos = {});
ExprPtr make_var(std::string name, Position pos = {});
ExprPtr make_unary(UnaryOp op, ExprPtr operand, Position pos = {});
ExprPtr make_binary(BinaryOp op, ExprPtr lhs, ExprPtr rhs, Position pos = {});
ExprPtr make_call(ExprPtr receiver, Method method, std::vector<ExprPtr> args,
                  Position pos = {});

enum class StmtKind {
  VarDecl,
  Assign,
  IncDec,
  ExprStmt,
  If,
  While,
  For,
  ForEach,
  Break,
  Continue,
  Return,
  Block,
};

enum class AssignOp { Set, Add, Sub, Mul, Div, Mod };

const char* to_string(AssignOp op);

struct Stmt;
using StmtPtr = std::unique_ptr<Stmt>;

struct Declarator {
  std::string name;
  ExprPtr init;
  Position pos;
};

struct Stmt {
  StmtKind kind = StmtKind::Block;
  Position pos;
  // VarDecl.
  TypeKind type = TypeKind::Int;
  std::vector<Declarator> declarators;
  // Assign, IncDec, ForEach element variable.
  std::string target;
  AssignOp op = AssignOp::Set;
  bool increment = true;
  bool prefix = false;
  // Assign value, ExprStmt call, If/While/For condition, Return value,
  // ForEach iterable.
  ExprPtr expr;
  // If: then/else. While/For/ForEach: body in `first`.
  StmtPtr first;
  StmtPtr second;
  // For header.
  StmtPtr init;
  StmtPtr update;
  // Block.
  std::vector<StmtPtr> stmts;

  StmtPtr clone() const;
};

struct Param {
  TypeKind type = TypeKind::Int;
  std::string name;
  Position pos;
};

struct MiniJProgram {
  TypeKind return_type = TypeKind::Void;
  std::string name;
  std::vector<Param> params;
  StmtPtr body;  // always a Block

  MiniJProgram clone() const;
};

// Structural equality, ignoring source positions.
bool equal(const Expr& a, const Expr& b);
bool equal(const Stmt& a, const Stmt& b);
bool equal(const MiniJProgram& a, const MiniJProgram& b);

}  // namespace streamline::frontend
