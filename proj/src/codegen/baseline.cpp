#include "streamline/codegen/baseline.hpp"

#include <functional>
#include <optional>

#include "streamline/frontend/printer.hpp"

namespace streamline::codegen {

namespace {

using frontend::Expr;
using frontend::ExprKind;
using frontend::ExprPtr;
using frontend::Method;
using frontend::Stmt;
using frontend::StmtKind;
using frontend::TypeKind;

constexpr const char* kVar = "el";

bool is_var(const Expr& e, const std::string& name) {
  return e.kind == ExprKind::Variable && e.name == name;
}

bool is_call(const Expr& e, Method m, const std::string& receiver, std::size_t args) {
  return e.kind == ExprKind::Call && e.method == m && e.operands.size() == args + 1 &&
         is_var(*e.operands[0], receiver);
}

// Unwraps single-statement blocks.
const Stmt& unwrap(const Stmt& s) {
  if (s.kind == StmtKind::Block && s.stmts.size() == 1) return unwrap(*s.stmts[0]);
  return s;
}

std::vector<const Stmt*> statements(const Stmt& s) {
  std::vector<const Stmt*> out;
  if (s.kind == StmtKind::Block) {
    for (const auto& x : s.stmts) out.push_back(x.get());
  } else {
    out.push_back(&s);
  }
  return out;
}

// Copy of `e` with element occurrences replaced by the lambda variable;
// nullopt when anything else refers to program state.
std::optional<ExprPtr> lambda_body(const Expr& e, const std::function<bool(const Expr&)>& element) {
  if (element(e)) return frontend::make_var(kVar);
  switch (e.kind) {
    case ExprKind::IntLiteral:
    case ExprKind::BoolLiteral:
    case ExprKind::NamedConstant:
      return e.clone();
    case ExprKind::Unary:
    case ExprKind::Binary: {
      ExprPtr out = e.clone();
      for (auto& op : out->operands) {
        auto sub = lambda_body(*op, element);
        if (!sub) return std::nullopt;
        op = std::move(*sub);
      }
      return out;
    }
    default:
      return std::nullopt;
  }
}

std::optional<std::string> lambda_text(const Expr& e,
                                       const std::function<bool(const Expr&)>& element) {
  auto body = lambda_body(e, element);
  if (!body) return std::nullopt;
  return frontend::print_expr(**body);
}

bool is_new_empty_list(const Stmt& s, std::string* name) {
  if (s.kind != StmtKind::VarDecl || s.type != TypeKind::List || s.declarators.size() != 1)
    return false;
  const auto& d = s.declarators[0];
  if (!d.init || d.init->kind != ExprKind::NewList || !d.init->operands.empty()) return false;
  *name = d.name;
  return true;
}

bool is_iterator_init(const Stmt& s, std::string* it, std::string* list) {
  if (s.kind != StmtKind::VarDecl || s.type != TypeKind::Iterator || s.declarators.size() != 1)
    return false;
  const auto& d = s.declarators[0];
  if (!d.init || d.init->kind != ExprKind::Call || d.init->method != Method::Iterator ||
      d.init->operands[0]->kind != ExprKind::Variable)
    return false;
  *it = d.name;
  *list = d.init->operands[0]->name;
  return true;
}

bool is_next(const Expr& e, const std::string& it) {
  if (e.kind == ExprKind::Call && e.method == Method::IntValue) return is_next(*e.operands[0], it);
  return is_call(e, Method::Next, it, 0);
}

bool is_return_of(const Stmt& s, const std::string& name) {
  return s.kind == StmtKind::Return && s.expr && is_var(*s.expr, name);
}

// `if (c) R.add(x);` or a bare `R.add(x);`.
bool guarded_add(const Stmt& s, const std::string& result, const Expr** cond, const Expr** value) {
  const Stmt* body = &unwrap(s);
  *cond = nullptr;
  if (body->kind == StmtKind::If) {
    if (body->second) return false;
    *cond = body->expr.get();
    body = &unwrap(*body->first);
  }
  if (body->kind != StmtKind::ExprStmt || !is_call(*body->expr, Method::Add, result, 1))
    return false;
  *value = body->expr->operands[1].get();
  return true;
}

std::string header(bool collectors) {
  return collectors ? "// imports: java.util.List, java.util.stream.Collectors\n"
                    : "// imports: java.util.ArrayList, java.util.List\n";
}

std::optional<std::string> collect_chain(const std::string& list, const Expr* cond,
                                         const Expr& value,
                                         const std::function<bool(const Expr&)>& element) {
  std::string chain = list + ".stream()";
  if (cond != nullptr) {
    auto text = lambda_text(*cond, element);
    if (!text) return std::nullopt;
    chain += ".filter(" + std::string(kVar) + " -> " + *text + ")";
  }
  if (!element(value)) {
    auto text = lambda_text(value, element);
    if (!text) return std::nullopt;
    chain += ".map(" + std::string(kVar) + " -> " + *text + ")";
  }
  return chain + ".collect(Collectors.toList())";
}

std::string method(const frontend::MiniJProgram& p, const std::string& body) {
  return frontend::print_signature(p) + " {\n" + body + "}\n";
}

bool is_step(const Stmt& s, const std::string& i) {
  if (s.kind == StmtKind::IncDec) return s.target == i && s.increment;
  return s.kind == StmtKind::Assign && s.target == i && s.op == frontend::AssignOp::Add &&
         s.expr->kind == ExprKind::IntLiteral && s.expr->value == 1;
}

std::optional<BaselineMatch> indexed_filter_map(const frontend::MiniJProgram& p,
                                                const std::vector<const Stmt*>& body) {
  std::string result;
  if (body.size() != 3 || !is_new_empty_list(*body[0], &result)) return std::nullopt;
  const Stmt& loop = *body[1];
  if (loop.kind != StmtKind::For || !loop.init || !loop.expr || !loop.update) return std::nullopt;
  const Stmt& init = *loop.init;
  if (init.kind != StmtKind::VarDecl || init.type != TypeKind::Int ||
      init.declarators.size() != 1 || !init.declarators[0].init ||
      init.declarators[0].init->kind != ExprKind::IntLiteral || init.declarators[0].init->value != 0)
    return std::nullopt;
  const std::string& i = init.declarators[0].name;
  const Expr& guard = *loop.expr;
  if (guard.kind != ExprKind::Binary || guard.binary != frontend::BinaryOp::Lt ||
      !is_var(*guard.operands[0], i) || guard.operands[1]->kind != ExprKind::Call ||
      guard.operands[1]->method != Method::Size ||
      guard.operands[1]->operands[0]->kind != ExprKind::Variable)
    return std::nullopt;
  const std::string& list = guard.operands[1]->operands[0]->name;
  if (!is_step(*loop.update, i) || !is_return_of(*body[2], result)) return std::nullopt;
  const Expr* cond = nullptr;
  const Expr* value = nullptr;
  if (!guarded_add(*loop.first, result, &cond, &value)) return std::nullopt;
  auto element = [&](const Expr& e) {
    return is_call(e, Method::Get, list, 1) && is_var(*e.operands[1], i);
  };
  auto chain = collect_chain(list, cond, *value, element);
  if (!chain) return std::nullopt;
  return BaselineMatch{"indexed-filter-map", header(true) + method(p, "  return " + *chain + ";\n")};
}

// `int x = it.next();` followed by the rest of the loop body.
bool element_decl(const Stmt& s, const std::string& it, std::string* var) {
  if (s.kind != StmtKind::VarDecl || s.type != TypeKind::Int || s.declarators.size() != 1 ||
      !s.declarators[0].init || !is_next(*s.declarators[0].init, it))
    return false;
  *var = s.declarators[0].name;
  return true;
}

std::optional<BaselineMatch> iterator_filter_map(const frontend::MiniJProgram& p,
                                                 const std::vector<const Stmt*>& body) {
  if (body.size() != 4) return std::nullopt;
  std::string result, it, list;
  bool ordered = is_new_empty_list(*body[0], &result) && is_iterator_init(*body[1], &it, &list);
  bool swapped = is_iterator_init(*body[0], &it, &list) && is_new_empty_list(*body[1], &result);
  if (!ordered && !swapped) return std::nullopt;
  const Stmt& loop = *body[2];
  if (loop.kind != StmtKind::While || !is_call(*loop.expr, Method::HasNext, it, 0) ||
      !is_return_of(*body[3], result))
    return std::nullopt;
  auto inner = statements(*loop.first);
  std::string var;
  if (inner.size() != 2 || !element_decl(*inner[0], it, &var)) return std::nullopt;
  const Expr* cond = nullptr;
  const Expr* value = nullptr;
  if (!guarded_add(*inner[1], result, &cond, &value)) return std::nullopt;
  auto element = [&](const Expr& e) { return is_var(e, var); };
  auto chain = collect_chain(list, cond, *value, element);
  if (!chain) return std::nullopt;
  return BaselineMatch{"iterator-filter-map",
                       header(true) + method(p, "  return " + *chain + ";\n")};
}

std::optional<BaselineMatch> iterator_remove(const frontend::MiniJProgram& p,
                                             const std::vector<const Stmt*>& body) {
  std::string it, list;
  if (body.size() != 2 || !is_iterator_init(*body[0], &it, &list)) return std::nullopt;
  const Stmt& loop = *body[1];
  if (loop.kind != StmtKind::While || !is_call(*loop.expr, Method::HasNext, it, 0))
    return std::nullopt;
  auto inner = statements(*loop.first);
  std::string var;
  std::function<bool(const Expr&)> element = [&](const Expr& e) { return is_next(e, it); };
  if (inner.size() == 2 && element_decl(*inner[0], it, &var)) {
    element = [&](const Expr& e) { return is_var(e, var); };
    inner.erase(inner.begin());
  }
  if (inner.size() != 1) return std::nullopt;
  const Stmt& guard = unwrap(*inner[0]);
  if (guard.kind != StmtKind::If || guard.second) return std::nullopt;
  const Stmt& then = unwrap(*guard.first);
  if (then.kind != StmtKind::ExprStmt || !is_call(*then.expr, Method::Remove, it, 0))
    return std::nullopt;
  auto kept = lambda_body(*guard.expr, element);
  if (!kept) return std::nullopt;
  std::string cond = frontend::print_expr(*frontend::make_unary(frontend::UnaryOp::Not,
                                                                std::move(*kept)));
  std::string text = "  List<Integer> copy = new ArrayList<>(" + list + ");\n  " + list +
                     ".clear();\n  copy.stream().filter(" + kVar + " -> " + cond +
                     ").forEachOrdered(" + list + "::add);\n";
  return BaselineMatch{"iterator-remove", header(false) + method(p, text)};
}

}  // namespace

BaselineResult emit_pattern_baseline(const frontend::MiniJProgram& p) {
  if (!p.body) return NoMatch{"empty body"};
  for (const auto& param : p.params) {
    if (param.name == kVar || param.name == "copy") return NoMatch{"name clash"};
  }
  auto body = statements(*p.body);
  if (body.empty()) return NoMatch{"empty body"};
  if (auto m = indexed_filter_map(p, body)) return *m;
  if (auto m = iterator_filter_map(p, body)) return *m;
  if (auto m = iterator_remove(p, body)) return *m;
  return NoMatch{"no template matches"};
}

}  // namespace streamline::codegen
