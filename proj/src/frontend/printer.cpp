#include "streamline/frontend/printer.hpp"

#include <sstream>

namespace streamline::frontend {

namespace {

int precedence(BinaryOp op) {
  switch (op) {
    case BinaryOp::Or: return 1;
    case BinaryOp::And: return 2;
    case BinaryOp::Eq:
    case BinaryOp::Ne: return 3;
    case BinaryOp::Lt:
    case BinaryOp::Le:
    case BinaryOp::Gt:
    case BinaryOp::Ge: return 4;
    case BinaryOp::Add:
    case BinaryOp::Sub: return 5;
    case BinaryOp::Mul:
    case BinaryOp::Div:
    case BinaryOp::Mod: return 6;
  }
  return 0;
}

constexpr int kUnaryPrecedence = 7;

int expr_precedence(const Expr& e) {
  if (e.kind == ExprKind::Binary) return precedence(e.binary);
  if (e.kind == ExprKind::Unary) return kUnaryPrecedence;
  if (e.kind == ExprKind::IntLiteral && e.value < 0) return kUnaryPrecedence;
  return 8;
}

std::string wrap(const Expr& e, int min_prec) {
  std::string text = print_expr(e);
  return expr_precedence(e) < min_prec ? "(" + text + ")" : text;
}

std::string indent(int depth) { return std::string(2 * depth, ' '); }

std::string simple(const Stmt& s) {
  switch (s.kind) {
    case StmtKind::Assign:
      return s.target + " " + to_string(s.op) + " " + print_expr(*s.expr);
    case StmtKind::IncDec: {
      const char* op = s.increment ? "++" : "--";
      return s.prefix ? op + s.target : s.target + op;
    }
    case StmtKind::ExprStmt:
      return print_expr(*s.expr);
    case StmtKind::VarDecl: {
      std::string text = java_type_name(s.type);
      for (std::size_t i = 0; i < s.declarators.size(); ++i) {
        text += i == 0 ? " " : ", ";
        text += s.declarators[i].name;
        if (s.declarators[i].init) text += " = " + print_expr(*s.declarators[i].init);
      }
      return text;
    }
    default:
      return "";
  }
}

// Body of a compound statement: blocks open on the same line.
std::string body(const Stmt& s, int depth) {
  if (s.kind == StmtKind::Block) return " " + print_stmt(s, depth).substr(2 * depth);
  return "\n" + print_stmt(s, depth + 1);
}

}  // namespace

std::string print_expr(const Expr& e) {
  switch (e.kind) {
    case ExprKind::IntLiteral:
      return std::to_string(e.value);
    case ExprKind::BoolLiteral:
      return e.value ? "true" : "false";
    case ExprKind::NamedConstant:
    case ExprKind::Variable:
      return e.name;
    case ExprKind::Unary:
      return std::string(to_string(e.unary)) + wrap(*e.operands[0], kUnaryPrecedence + 1);
    case ExprKind::Binary: {
      int prec = precedence(e.binary);
      return wrap(*e.operands[0], prec) + " " + to_string(e.binary) + " " +
             wrap(*e.operands[1], prec + 1);
    }
    case ExprKind::Call: {
      std::string text = wrap(*e.operands[0], 8) + "." + to_string(e.method) + "(";
      for (std::size_t i = 1; i < e.operands.size(); ++i) {
        if (i > 1) text += ", ";
        text += print_expr(*e.operands[i]);
      }
      return text + ")";
    }
    case ExprKind::NewList:
      return e.operands.empty() ? "new ArrayList<>()"
                                : "new ArrayList<>(" + print_expr(*e.operands[0]) + ")";
  }
  return "?";
}

std::string print_stmt(const Stmt& s, int depth) {
  std::string pad = indent(depth);
  switch (s.kind) {
    case StmtKind::VarDecl:
    case StmtKind::Assign:
    case StmtKind::IncDec:
    case StmtKind::ExprStmt:
      return pad + simple(s) + ";\n";
    case StmtKind::Break:
      return pad + "break;\n";
    case StmtKind::Continue:
      return pad + "continue;\n";
    case StmtKind::Return:
      return pad + (s.expr ? "return " + print_expr(*s.expr) + ";\n" : "return;\n");
    case StmtKind::Block: {
      std::string text = pad + "{\n";
      for (const auto& inner : s.stmts) text += print_stmt(*inner, depth + 1);
      return text + pad + "}\n";
    }
    case StmtKind::If: {
      std::string text = pad + "if (" + print_expr(*s.expr) + ")" + body(*s.first, depth);
      if (s.second) {
        if (s.first->kind == StmtKind::Block) {
          text.pop_back();
          text += " else";
        } else {
          text += pad + "else";
        }
        if (s.second->kind == StmtKind::If) {
          text += " " + print_stmt(*s.second, depth).substr(2 * depth);
        } else {
          text += body(*s.second, depth);
        }
      }
      return text;
    }
    case StmtKind::While:
      return pad + "while (" + print_expr(*s.expr) + ")" + body(*s.first, depth);
    case StmtKind::For: {
      std::string header = "for (";
      header += s.init ? simple(*s.init) : "";
      header += "; " + print_expr(*s.expr) + ";";
      if (s.update) header += " " + simple(*s.update);
      return pad + header + ")" + body(*s.first, depth);
    }
    case StmtKind::ForEach:
      return pad + "for (int " + s.target + " : " + print_expr(*s.expr) + ")" +
             body(*s.first, depth);
  }
  return "";
}

std::string print_signature(const MiniJProgram& p) {
  std::string text = std::string(java_type_name(p.return_type)) + " " + p.name + "(";
  for (std::size_t i = 0; i < p.params.size(); ++i) {
    if (i > 0) text += ", ";
    text += std::string(java_type_name(p.params[i].type)) + " " + p.params[i].name;
  }
  return text + ")";
}

std::string print_program(const MiniJProgram& p) {
  return print_signature(p) + " " + print_stmt(*p.body, 0);
}

}  // namespace streamline::frontend
