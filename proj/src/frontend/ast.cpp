#include "streamline/frontend/ast.hpp"

#include <sstream>

namespace streamline::frontend {

namespace {

std::string describe(Position pos, const std::string& message) {
  std::ostringstream out;
  out << pos.line << ":" << pos.column << ": " << message;
  return out.str();
}

std::string join_expected(const std::string& found,
                          const std::vector<std::string>& expected) {
  std::string text = "unexpected " + found;
  if (expected.empty()) return text;
  text += ", expected ";
  for (std::size_t i = 0; i < expected.size(); ++i) {
    if (i > 0) text += i + 1 == expected.size() ? " or " : ", ";
    text += expected[i];
  }
  return text;
}

template <typename T>
std::unique_ptr<T> clone_ptr(const std::unique_ptr<T>& p) {
  return p ? p->clone() : nullptr;
}

bool equal_ptr(const ExprPtr& a, const ExprPtr& b) {
  if (!a || !b) return !a && !b;
  return equal(*a, *b);
}

bool equal_ptr(const StmtPtr& a, const StmtPtr& b) {
  if (!a || !b) return !a && !b;
  return equal(*a, *b);
}

}  // namespace

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Syntax: return "SyntaxError";
    case ErrorKind::UnsupportedConstruct: return "UnsupportedConstruct";
    case ErrorKind::Binding: return "BindingError";
    case ErrorKind::Type: return "TypeError";
  }
  return "?";
}

FrontendError::FrontendError(ErrorKind kind, Position pos,
                             const std::string& message)
    : std::runtime_error(std::string(to_string(kind)) + " at " +
                         describe(pos, message)),
      kind_(kind),
      pos_(pos),
      detail_(message) {}

SyntaxError::SyntaxError(Position pos, const std::string& found,
                         std::vector<std::string> expected)
    : FrontendError(ErrorKind::Syntax, pos, join_expected(found, expected)),
      expected_(std::move(expected)) {}

const char* java_type_name(TypeKind type) {
  switch (type) {
    case TypeKind::Void: return "void";
    case TypeKind::Int: return "int";
    case TypeKind::Boolean: return "boolean";
    case TypeKind::List: return "List<Integer>";
    case TypeKind::Iterator: return "Iterator<Integer>";
  }
  return "?";
}

const char* to_string(UnaryOp op) { return op == UnaryOp::Neg ? "-" : "!"; }

const char* to_string(BinaryOp op) {
  switch (op) {
    case BinaryOp::Add: return "+";
    case BinaryOp::Sub: return "-";
    case BinaryOp::Mul: return "*";
    case BinaryOp::Div: return "/";
    case BinaryOp::Mod: return "%";
    case BinaryOp::Lt: return "<";
    case BinaryOp::Le: return "<=";
    case BinaryOp::Gt: return ">";
    case BinaryOp::Ge: return ">=";
    case BinaryOp::Eq: return "==";
    case BinaryOp::Ne: return "!=";
    case BinaryOp::And: return "&&";
    case BinaryOp::Or: return "||";
  }
  return "?";
}

const char* to_string(Method method) {
  switch (method) {
    case Method::Size: return "size";
    case Method::Get: return "get";
    case Method::HasNext: return "hasNext";
    case Method::Next: return "next";
    case Method::Iterator: return "iterator";
    case Method::IntValue: return "intValue";
    case Method::Add: return "add";
    case Method::Set: return "set";
    case Method::Clear: return "clear";
    case Method::Remove: return "remove";
  }
  return "?";
}

const char* to_string(AssignOp op) {
  switch (op) {
    case AssignOp::Set: return "=";
    case AssignOp::Add: return "+=";
    case AssignOp::Sub: return "-=";
    case AssignOp::Mul: return "*=";
    case AssignOp::Div: return "/=";
    case AssignOp::Mod: return "%=";
  }
  return "?";
}

ExprPtr Expr::clone() const {
  auto copy = std::make_unique<Expr>();
  copy->kind = kind;
  copy->pos = pos;
  copy->value = value;
  copy->name = name;
  copy->unary = unary;
  copy->binary = binary;
  copy->method = method;
  for (const auto& operand : operands) copy->operands.push_back(clone_ptr(operand));
  return copy;
}

StmtPtr Stmt::clone() const {
  auto copy = std::make_unique<Stmt>();
  copy->kind = kind;
  copy->pos = pos;
  copy->type = type;
  for (const auto& d : declarators) {
    copy->declarators.push_back({d.name, clone_ptr(d.init), d.pos});
  }
  copy->target = target;
  copy->op = op;
  copy->increment = increment;
  copy->prefix = prefix;
  copy->expr = clone_ptr(expr);
  copy->first = clone_ptr(first);
  copy->second = clone_ptr(second);
  copy->init = clone_ptr(init);
  copy->update = clone_ptr(update);
  for (const auto& s : stmts) copy->stmts.push_back(clone_ptr(s));
  return copy;
}

MiniJProgram MiniJProgram::clone() const {
  MiniJProgram copy;
  copy.return_type = return_type;
  copy.name = name;
  copy.params = params;
  copy.body = clone_ptr(body);
  return copy;
}

ExprPtr make_int(std::int64_t value, Position pos) {
  auto e = std::make_unique<Expr>();
  e->kind = ExprKind::IntLiteral;
  e->value = value;
  e->pos = pos;
  return e;
}

ExprPtr make_bool(bool value, Position pos) {
  auto e = make_int(value ? 1 : 0, pos);
  e->kind = ExprKind::BoolLiteral;
  return e;
}

ExprPtr make_var(std::string name, Position pos) {
  auto e = std::make_unique<Expr>();
  e->kind = ExprKind::Variable;
  e->name = std::move(name);
  e->pos = pos;
  return e;
}

ExprPtr make_unary(UnaryOp op, ExprPtr operand, Position pos) {
  auto e = std::make_unique<Expr>();
  e->kind = ExprKind::Unary;
  e->unary = op;
  e->pos = pos;
  e->operands.push_back(std::move(operand));
  return e;
}

ExprPtr make_binary(BinaryOp op, ExprPtr lhs, ExprPtr rhs, Position pos) {
  auto e = std::make_unique<Expr>();
  e->kind = ExprKind::Binary;
  e->binary = op;
  e->pos = pos;
  e->operands.push_back(std::move(lhs));
  e->operands.push_back(std::move(rhs));
  return e;
}

ExprPtr make_call(ExprPtr receiver, Method method, std::vector<ExprPtr> args,
                  Position pos) {
  auto e = std::make_unique<Expr>();
  e->kind = ExprKind::Call;
  e->method = method;
  e->pos = pos;
  e->operands.push_back(std::move(receiver));
  for (auto& a : args) e->operands.push_back(std::move(a));
  return e;
}

bool equal(const Expr& a, const Expr& b) {
  if (a.kind != b.kind || a.operands.size() != b.operands.size()) return false;
  switch (a.kind) {
    case ExprKind::IntLiteral:
    case ExprKind::BoolLiteral:
      if (a.value != b.value) return false;
      break;
    case ExprKind::NamedConstant:
    case ExprKind::Variable:
      if (a.name != b.name) return false;
      break;
    case ExprKind::Unary:
      if (a.unary != b.unary) return false;
      break;
    case ExprKind::Binary:
      if (a.binary != b.binary) return false;
      break;
    case ExprKind::Call:
      if (a.method != b.method) return false;
      break;
    case ExprKind::NewList:
      break;
  }
  for (std::size_t i = 0; i < a.operands.size(); ++i) {
    if (!equal_ptr(a.operands[i], b.operands[i])) return false;
  }
  return true;
}

bool equal(const Stmt& a, const Stmt& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case StmtKind::VarDecl:
      if (a.type != b.type || a.declarators.size() != b.declarators.size()) {
        return false;
      }
      for (std::size_t i = 0; i < a.declarators.size(); ++i) {
        if (a.declarators[i].name != b.declarators[i].name ||
            !equal_ptr(a.declarators[i].init, b.declarators[i].init)) {
          return false;
        }
      }
      return true;
    case StmtKind::Assign:
      return a.target == b.target && a.op == b.op && equal_ptr(a.expr, b.expr);
    case StmtKind::IncDec:
      return a.target == b.target && a.increment == b.increment &&
             a.prefix == b.prefix;
    case StmtKind::ExprStmt:
    case StmtKind::Return:
      return equal_ptr(a.expr, b.expr);
    case StmtKind::If:
    case StmtKind::While:
      return equal_ptr(a.expr, b.expr) && equal_ptr(a.first, b.first) &&
             equal_ptr(a.second, b.second);
    case StmtKind::For:
      return equal_ptr(a.init, b.init) && equal_ptr(a.expr, b.expr) &&
             equal_ptr(a.update, b.update) && equal_ptr(a.first, b.first);
    case StmtKind::ForEach:
      return a.target == b.target && equal_ptr(a.expr, b.expr) &&
             equal_ptr(a.first, b.first);
    case StmtKind::Break:
    case StmtKind::Continue:
      return true;
    case StmtKind::Block:
      if (a.stmts.size() != b.stmts.size()) return false;
      for (std::size_t i = 0; i < a.stmts.size(); ++i) {
        if (!equal_ptr(a.stmts[i], b.stmts[i])) return false;
      }
      return true;
  }
  return false;
}

bool equal(const MiniJProgram& a, const MiniJProgram& b) {
  if (a.return_type != b.return_type || a.name != b.name ||
      a.params.size() != b.params.size()) {
    return false;
  }
  for (std::size_t i = 0; i < a.params.size(); ++i) {
    if (a.params[i].type != b.params[i].type ||
        a.params[i].name != b.params[i].name) {
      return false;
    }
  }
  return equal_ptr(a.body, b.body);
}

}  // namespace streamline::frontend
