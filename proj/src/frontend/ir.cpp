#include "streamline/frontend/ir.hpp"

#include <sstream>

namespace streamline::ir {

namespace {

void print_block(const Program& p, const std::vector<Stmt>& block, int depth,
                 std::ostringstream& out);

std::string pad(int depth) { return std::string(2 * depth, ' '); }

std::string name_of(const Program& p, Slot s) {
  return s == kNoSlot ? "_" : p.vars[s].name;
}

std::string heap_prefix(const Stmt& s) {
  return s.heap_out.empty() ? "" : s.heap_out + " = ";
}

void print_stmt(const Program& p, const Stmt& s, int depth, std::ostringstream& out) {
  out << pad(depth);
  auto arg = [&](std::size_t i) { return print_expr(p, s.args[i]); };
  std::string h = s.heap_in.empty() ? "h" : s.heap_in;
  switch (s.kind) {
    case StmtKind::Assign:
      out << name_of(p, s.target) << " = " << arg(0) << "\n";
      return;
    case StmtKind::NewList:
      out << heap_prefix(s) << "new(" << h << ", " << name_of(p, s.target);
      if (s.source != kNoSlot) out << ", copy " << name_of(p, s.source);
      out << ")\n";
      return;
    case StmtKind::IterInit:
      out << name_of(p, s.target) << " = iterator(" << name_of(p, s.source) << ")\n";
      return;
    case StmtKind::Next:
      if (s.target != kNoSlot) out << name_of(p, s.target) << " = ";
      out << "next(" << name_of(p, s.source) << ")\n";
      return;
    case StmtKind::IterRemove:
      out << heap_prefix(s) << "remove(" << h << ", " << name_of(p, s.target) << ")\n";
      return;
    case StmtKind::Add:
      out << heap_prefix(s) << "add(" << h << ", " << name_of(p, s.target) << ", "
          << arg(0) << ", " << arg(1) << ")\n";
      return;
    case StmtKind::AddLast:
      out << heap_prefix(s) << "add_last(" << h << ", " << name_of(p, s.target)
          << ", " << arg(0) << ")\n";
      return;
    case StmtKind::Set:
      out << heap_prefix(s) << "set(" << h << ", " << name_of(p, s.target) << ", "
          << arg(0) << ", " << arg(1) << ")\n";
      return;
    case StmtKind::RemoveAt:
      out << heap_prefix(s) << "removeAt(" << h << ", " << name_of(p, s.target)
          << ", " << arg(0) << ")\n";
      return;
    case StmtKind::Clear:
      out << heap_prefix(s) << "clear(" << h << ", " << name_of(p, s.target) << ")\n";
      return;
    case StmtKind::CopyHeap:
      out << s.heap_out << " = copyHeap(" << s.heap_in << ")\n";
      return;
    case StmtKind::If:
      out << "if (" << arg(0) << ")\n";
      print_block(p, s.then_block, depth + 1, out);
      if (!s.else_block.empty()) {
        out << pad(depth) << "else\n";
        print_block(p, s.else_block, depth + 1, out);
      }
      return;
    case StmtKind::Loop: {
      const Loop& loop = p.loops[s.loop];
      out << "L" << loop.id << ": while (" << print_expr(p, loop.guard) << ") ["
          << loop.invariant << "]\n";
      print_block(p, loop.body, depth + 1, out);
      if (!loop.update.empty()) {
        out << pad(depth) << "update:\n";
        print_block(p, loop.update, depth + 1, out);
      }
      return;
    }
    case StmtKind::Break:
      out << "break\n";
      return;
    case StmtKind::Continue:
      out << "continue\n";
      return;
    case StmtKind::Return:
      out << "return";
      if (!s.args.empty()) out << " " << arg(0);
      out << "\n";
      return;
  }
}

void print_block(const Program& p, const std::vector<Stmt>& block, int depth,
                 std::ostringstream& out) {
  for (const auto& s : block) print_stmt(p, s, depth, out);
}

}  // namespace

Expr make_const(std::int32_t value) {
  Expr e;
  e.kind = ExprKind::Const;
  e.value = value;
  return e;
}

Expr make_var(Slot slot) {
  Expr e;
  e.kind = ExprKind::Var;
  e.slot = slot;
  return e;
}

bool produces_heap(StmtKind kind) {
  switch (kind) {
    case StmtKind::NewList:
    case StmtKind::IterRemove:
    case StmtKind::Add:
    case StmtKind::AddLast:
    case StmtKind::Set:
    case StmtKind::RemoveAt:
    case StmtKind::Clear:
      return true;
    default:
      return false;
  }
}

const char* to_string(OutputKind kind) {
  switch (kind) {
    case OutputKind::InPlaceList: return "in-place list";
    case OutputKind::FreshList: return "list";
    case OutputKind::Int: return "int";
    case OutputKind::Boolean: return "boolean";
  }
  return "?";
}

Slot Program::find(std::string_view n) const {
  for (std::size_t i = 0; i < vars.size(); ++i) {
    if (vars[i].name == n) return static_cast<Slot>(i);
  }
  return kNoSlot;
}

const Output* Program::output(std::string_view n) const {
  for (const auto& o : outputs) {
    if (o.name == n || o.display == n) return &o;
  }
  return nullptr;
}

std::vector<Slot> Program::list_params() const {
  std::vector<Slot> out;
  for (Slot s : params) {
    if (vars[s].kind == VarKind::List) out.push_back(s);
  }
  return out;
}

std::vector<Slot> Program::scalar_params() const {
  std::vector<Slot> out;
  for (Slot s : params) {
    if (vars[s].kind == VarKind::Int || vars[s].kind == VarKind::Boolean) out.push_back(s);
  }
  return out;
}

std::string print_expr(const Program& p, const Expr& e) {
  switch (e.kind) {
    case ExprKind::Const:
      return std::to_string(e.value);
    case ExprKind::Var:
      return name_of(p, e.slot);
    case ExprKind::Unary:
      return std::string(frontend::to_string(e.unary)) + "(" + print_expr(p, e.args[0]) + ")";
    case ExprKind::Binary:
      return "(" + print_expr(p, e.args[0]) + " " + frontend::to_string(e.binary) + " " +
             print_expr(p, e.args[1]) + ")";
    case ExprKind::Size:
      return "size(" + name_of(p, e.slot) + ")";
    case ExprKind::Get:
      return "get(" + name_of(p, e.slot) + ", " + print_expr(p, e.args[0]) + ")";
    case ExprKind::HasNext:
      return "hasNext(" + name_of(p, e.slot) + ")";
  }
  return "?";
}

std::string Program::listing() const {
  std::ostringstream out;
  out << name << "(";
  for (std::size_t i = 0; i < params.size(); ++i) {
    if (i > 0) out << ", ";
    out << vars[params[i]].name;
  }
  out << ")\n";
  print_block(*this, body, 1, out);
  out << "outputs:";
  for (const auto& o : outputs) out << " " << o.display << ":" << to_string(o.kind);
  out << "\n";
  return out.str();
}

}  // namespace streamline::ir
