#include "streamline/frontend/lower.hpp"

#include <algorithm>
#include <climits>
#include <map>
#include <set>

#include "streamline/frontend/parser.hpp"

namespace streamline::frontend {

namespace {

using ir::Slot;
using ir::VarKind;

VarKind var_kind(TypeKind t) {
  switch (t) {
    case TypeKind::Int: return VarKind::Int;
    case TypeKind::Boolean: return VarKind::Boolean;
    case TypeKind::List: return VarKind::List;
    default: return VarKind::Iterator;
  }
}

const char* kind_name(VarKind k) {
  switch (k) {
    case VarKind::Int: return "int";
    case VarKind::Boolean: return "boolean";
    case VarKind::List: return "list";
    case VarKind::Iterator: return "iterator";
  }
  return "?";
}

// Definite-assignment facts along one control path.
struct Flow {
  std::vector<char> assigned;  // per slot
  bool dead = false;           // path cannot reach here

  static Flow merge(const Flow& a, const Flow& b) {
    if (a.dead) return b;
    if (b.dead) return a;
    Flow out = a;
    for (std::size_t i = 0; i < out.assigned.size(); ++i) {
      out.assigned[i] = a.assigned[i] && b.assigned[i];
    }
    return out;
  }
};

struct Typed {
  ir::Expr expr;
  VarKind type;
};

class Lowerer {
 public:
  explicit Lowerer(const MiniJProgram& ast) : ast_(ast) {}

  ir::Program run() {
    prog_.name = ast_.name;
    prog_.return_type = ast_.return_type;
    prog_.signature = ast_.params;
    scopes_.emplace_back();
    for (const auto& p : ast_.params) {
      Slot s = declare(p.name, var_kind(p.type), p.pos);
      prog_.vars[s].is_param = true;
      flow_.assigned[s] = 1;
    }
    prog_.body = lower_block(*ast_.body, /*new_scope=*/false);
    if (ast_.return_type != TypeKind::Void && !flow_.dead) {
      throw BindingError(ast_.body->pos, "missing return statement");
    }
    for (Slot s = 0; s < static_cast<Slot>(ast_.params.size()); ++s) {
      if (referenced_.count(s)) prog_.params.push_back(s);
    }
    finish_outputs();
    name_heaps();
    std::sort(literals_.begin(), literals_.end());
    literals_.erase(std::unique(literals_.begin(), literals_.end()), literals_.end());
    prog_.literals = literals_;
    return std::move(prog_);
  }

 private:
  // ---- scopes and variables ----

  Slot declare(const std::string& name, VarKind kind, Position pos) {
    for (const auto& scope : scopes_) {
      if (scope.count(name)) {
        throw BindingError(pos, "variable " + name + " is already defined");
      }
    }
    std::string unique = name;
    for (int n = 1; prog_.find(unique) != ir::kNoSlot; ++n) {
      unique = name + "_" + std::to_string(n);
    }
    Slot s = static_cast<Slot>(prog_.vars.size());
    prog_.vars.push_back({unique, kind, false, false});
    flow_.assigned.push_back(0);
    declared_depth_.push_back(static_cast<int>(loop_stack_.size()));
    scopes_.back()[name] = s;
    return s;
  }

  Slot temp(VarKind kind, const std::string& stem) {
    std::string name = "$" + stem + std::to_string(temp_count_++);
    Slot s = static_cast<Slot>(prog_.vars.size());
    prog_.vars.push_back({name, kind, false, true});
    flow_.assigned.push_back(0);
    declared_depth_.push_back(static_cast<int>(loop_stack_.size()));
    return s;
  }

  Slot lookup(const std::string& name, Position pos) {
    for (auto it = scopes_.rbegin(); it != scopes_.rend(); ++it) {
      auto found = it->find(name);
      if (found != it->end()) {
        referenced_.insert(found->second);
        return found->second;
      }
    }
    throw BindingError(pos, "undeclared variable " + name);
  }

  void require_assigned(Slot s, Position pos) {
    if (!flow_.dead && !flow_.assigned[s]) {
      const auto& v = prog_.vars[s];
      if (v.kind == VarKind::Iterator) {
        throw BindingError(pos, "iterator " + v.name + " is not bound to a list");
      }
      throw BindingError(pos, "variable " + v.name + " might not have been initialized");
    }
  }

  Slot lookup_kind(const Expr& e, VarKind kind, const char* role) {
    if (e.kind != ExprKind::Variable) {
      throw UnsupportedConstruct(e.pos, std::string(role) + " must be a variable");
    }
    Slot s = lookup(e.name, e.pos);
    if (prog_.vars[s].kind != kind) {
      throw TypeError(e.pos, e.name + " is not a " + kind_name(kind));
    }
    require_assigned(s, e.pos);
    return s;
  }

  void record_literal(std::int64_t v) {
    if (v >= INT32_MIN && v <= INT32_MAX) literals_.push_back(static_cast<std::int32_t>(v));
  }

  // ---- expressions ----

  struct ExprContext {
    std::vector<ir::Stmt>* pending = nullptr;  // null: next() is not allowed
    const char* forbidden_reason = "";
  };

  Typed expect_type(const Expr& e, VarKind want, ExprContext ctx) {
    Typed t = lower_expr(e, ctx);
    if (t.type != want) {
      throw TypeError(e.pos, std::string("expected ") + kind_name(want) + " expression, found " +
                                 kind_name(t.type));
    }
    return t;
  }

  Typed lower_expr(const Expr& e, ExprContext ctx) {
    switch (e.kind) {
      case ExprKind::IntLiteral:
        if (e.value > INT32_MAX || e.value < INT32_MIN) {
          throw TypeError(e.pos, "integer literal out of range");
        }
        record_literal(e.value);
        return {ir::make_const(static_cast<std::int32_t>(e.value)), VarKind::Int};
      case ExprKind::BoolLiteral:
        return {ir::make_const(e.value ? 1 : 0), VarKind::Boolean};
      case ExprKind::NamedConstant:
        return {ir::make_const(e.name == "Integer.MIN_VALUE" ? INT32_MIN : INT32_MAX),
                VarKind::Int};
      case ExprKind::Variable: {
        Slot s = lookup(e.name, e.pos);
        VarKind k = prog_.vars[s].kind;
        if (k == VarKind::List || k == VarKind::Iterator) {
          throw UnsupportedConstruct(e.pos, std::string(kind_name(k)) + " " + e.name +
                                                " used as a value");
        }
        require_assigned(s, e.pos);
        return {ir::make_var(s), k};
      }
      case ExprKind::Unary: {
        if (e.unary == UnaryOp::Neg) {
          const Expr& inner = *e.operands[0];
          if (inner.kind == ExprKind::IntLiteral) record_literal(-inner.value);
          Typed t = expect_type(inner, VarKind::Int, ctx);
          if (t.expr.kind == ir::ExprKind::Const) {
            t.expr.value = static_cast<std::int32_t>(0u - static_cast<std::uint32_t>(t.expr.value));
            return t;
          }
          ir::Expr out;
          out.kind = ir::ExprKind::Unary;
          out.unary = UnaryOp::Neg;
          out.args.push_back(std::move(t.expr));
          return {std::move(out), VarKind::Int};
        }
        Typed t = expect_type(*e.operands[0], VarKind::Boolean, ctx);
        ir::Expr out;
        out.kind = ir::ExprKind::Unary;
        out.unary = UnaryOp::Not;
        out.args.push_back(std::move(t.expr));
        return {std::move(out), VarKind::Boolean};
      }
      case ExprKind::Binary:
        return lower_binary(e, ctx);
      case ExprKind::Call:
        return lower_call(e, ctx);
      case ExprKind::NewList:
        throw UnsupportedConstruct(e.pos, "list allocation outside a declaration");
    }
    throw TypeError(e.pos, "bad expression");
  }

  Typed lower_binary(const Expr& e, ExprContext ctx) {
    BinaryOp op = e.binary;
    ir::Expr out;
    out.kind = ir::ExprKind::Binary;
    out.binary = op;
    if (op == BinaryOp::And || op == BinaryOp::Or) {
      Typed lhs = expect_type(*e.operands[0], VarKind::Boolean, ctx);
      ExprContext rhs_ctx{nullptr, "next() on the right of a short-circuit operator"};
      Typed rhs = expect_type(*e.operands[1], VarKind::Boolean,
                              ctx.pending ? rhs_ctx : ctx);
      out.args.push_back(std::move(lhs.expr));
      out.args.push_back(std::move(rhs.expr));
      return {std::move(out), VarKind::Boolean};
    }
    Typed lhs = lower_expr(*e.operands[0], ctx);
    Typed rhs = lower_expr(*e.operands[1], ctx);
    bool arithmetic = op == BinaryOp::Add || op == BinaryOp::Sub || op == BinaryOp::Mul ||
                      op == BinaryOp::Div || op == BinaryOp::Mod;
    bool equality = op == BinaryOp::Eq || op == BinaryOp::Ne;
    if (equality && lhs.type == VarKind::Boolean && rhs.type == VarKind::Boolean) {
      // boolean comparison
    } else if (lhs.type != VarKind::Int || rhs.type != VarKind::Int) {
      throw TypeError(e.pos, std::string("operator ") + to_string(op) +
                                 " needs int operands");
    }
    out.args.push_back(std::move(lhs.expr));
    out.args.push_back(std::move(rhs.expr));
    return {std::move(out), arithmetic ? VarKind::Int : VarKind::Boolean};
  }

  Typed lower_call(const Expr& e, ExprContext ctx) {
    const Expr& recv = *e.operands[0];
    std::size_t argc = e.operands.size() - 1;
    auto arity = [&](std::size_t n) {
      if (argc != n) {
        throw TypeError(e.pos, std::string(to_string(e.method)) + " expects " +
                                   std::to_string(n) + " argument(s)");
      }
    };
    switch (e.method) {
      case Method::IntValue: {
        arity(0);
        return expect_type(recv, VarKind::Int, ctx);
      }
      case Method::Size: {
        arity(0);
        ir::Expr out;
        out.kind = ir::ExprKind::Size;
        out.slot = lookup_kind(recv, VarKind::List, "size() receiver");
        return {std::move(out), VarKind::Int};
      }
      case Method::Get: {
        arity(1);
        ir::Expr out;
        out.kind = ir::ExprKind::Get;
        out.slot = lookup_kind(recv, VarKind::List, "get() receiver");
        out.args.push_back(expect_type(*e.operands[1], VarKind::Int, ctx).expr);
        return {std::move(out), VarKind::Int};
      }
      case Method::HasNext: {
        arity(0);
        ir::Expr out;
        out.kind = ir::ExprKind::HasNext;
        out.slot = lookup_kind(recv, VarKind::Iterator, "hasNext() receiver");
        return {std::move(out), VarKind::Boolean};
      }
      case Method::Next: {
        arity(0);
        Slot it = lookup_kind(recv, VarKind::Iterator, "next() receiver");
        if (!ctx.pending) {
          throw UnsupportedConstruct(e.pos, ctx.forbidden_reason);
        }
        Slot t = temp(VarKind::Int, "t");
        flow_.assigned[t] = 1;
        ir::Stmt next;
        next.kind = ir::StmtKind::Next;
        next.target = t;
        next.source = it;
        ctx.pending->push_back(std::move(next));
        return {ir::make_var(t), VarKind::Int};
      }
      case Method::Iterator:
        throw UnsupportedConstruct(e.pos, "iterator() outside an iterator initialisation");
      case Method::Add:
      case Method::Set:
      case Method::Clear:
      case Method::Remove:
        throw UnsupportedConstruct(e.pos, std::string(to_string(e.method)) +
                                              "() used as a value");
    }
    throw TypeError(e.pos, "bad call");
  }

  // ---- statements ----

  std::vector<ir::Stmt> lower_block(const Stmt& s, bool new_scope) {
    std::vector<ir::Stmt> out;
    if (s.kind != StmtKind::Block) {
      if (new_scope) scopes_.emplace_back();
      lower_stmt(s, out);
      if (new_scope) scopes_.pop_back();
      return out;
    }
    if (new_scope) scopes_.emplace_back();
    for (const auto& inner : s.stmts) lower_stmt(*inner, out);
    if (new_scope) scopes_.pop_back();
    return out;
  }

  ExprContext statement_context(std::vector<ir::Stmt>& out) {
    return {&out, ""};
  }

  void bind_iterator(Slot it, const Expr& init, Position pos, std::vector<ir::Stmt>& out) {
    if (init.kind != ExprKind::Call || init.method != Method::Iterator ||
        init.operands.size() != 1) {
      throw TypeError(pos, "iterator must be initialised with list.iterator()");
    }
    Slot list = lookup_kind(*init.operands[0], VarKind::List, "iterator() receiver");
    if (ever_bound_.count(it)) {
      throw BindingError(pos, "iterator " + prog_.vars[it].name + " is bound more than once");
    }
    if (declared_depth_[it] < static_cast<int>(loop_stack_.size())) {
      throw BindingError(pos, "iterator " + prog_.vars[it].name +
                                  " is rebound on every loop iteration");
    }
    ever_bound_.insert(it);
    iter_list_[it] = list;
    ir::Stmt st;
    st.kind = ir::StmtKind::IterInit;
    st.target = it;
    st.source = list;
    out.push_back(std::move(st));
    flow_.assigned[it] = 1;
  }

  void init_list(Slot list, const Expr& init, Position pos, std::vector<ir::Stmt>& out) {
    if (init.kind != ExprKind::NewList) {
      throw UnsupportedConstruct(pos, "list variables must be initialised with new ArrayList<>()");
    }
    ir::Stmt st;
    st.kind = ir::StmtKind::NewList;
    st.target = list;
    if (!init.operands.empty()) {
      const Expr& arg = *init.operands[0];
      if (arg.kind == ExprKind::Variable &&
          prog_.vars[lookup(arg.name, arg.pos)].kind == VarKind::List) {
        st.source = lookup_kind(arg, VarKind::List, "copied list");
      } else {
        // Initial capacity: evaluated for its exceptions only.
        expect_type(arg, VarKind::Int, statement_context(out));
      }
    }
    out.push_back(std::move(st));
    flow_.assigned[list] = 1;
  }

  void assign_scalar(Slot target, const Expr& value, Position pos, std::vector<ir::Stmt>& out) {
    VarKind k = prog_.vars[target].kind;
    ir::Stmt st;
    st.kind = ir::StmtKind::Assign;
    st.target = target;
    // x = it.next() keeps the advance as the assignment itself.
    const Expr* v = &value;
    while (v->kind == ExprKind::Call && v->method == Method::IntValue) v = v->operands[0].get();
    if (k == VarKind::Int && v->kind == ExprKind::Call && v->method == Method::Next) {
      if (v->operands.size() != 1) throw TypeError(pos, "next expects 0 argument(s)");
      st.kind = ir::StmtKind::Next;
      st.source = lookup_kind(*v->operands[0], VarKind::Iterator, "next() receiver");
      out.push_back(std::move(st));
      flow_.assigned[target] = 1;
      return;
    }
    st.args.push_back(expect_type(value, k, statement_context(out)).expr);
    out.push_back(std::move(st));
    flow_.assigned[target] = 1;
  }

  void lower_decl(const Stmt& s, std::vector<ir::Stmt>& out) {
    VarKind k = var_kind(s.type);
    for (const auto& d : s.declarators) {
      Slot slot = declare(d.name, k, d.pos);
      if (k == VarKind::List) {
        if (!d.init) {
          throw UnsupportedConstruct(d.pos, "list variable " + d.name + " without initialiser");
        }
        init_list(slot, *d.init, d.pos, out);
      } else if (k == VarKind::Iterator) {
        if (d.init) bind_iterator(slot, *d.init, d.pos, out);
      } else if (d.init) {
        assign_scalar(slot, *d.init, d.pos, out);
      }
    }
  }

  static ir::Expr binary(BinaryOp op, ir::Expr a, ir::Expr b) {
    ir::Expr out;
    out.kind = ir::ExprKind::Binary;
    out.binary = op;
    out.args.push_back(std::move(a));
    out.args.push_back(std::move(b));
    return out;
  }

  void lower_assign(const Stmt& s, std::vector<ir::Stmt>& out) {
    Slot target = lookup(s.target, s.pos);
    VarKind k = prog_.vars[target].kind;
    if (k == VarKind::List) {
      throw UnsupportedConstruct(s.pos, "reassignment of list variable " + s.target);
    }
    if (prog_.vars[target].is_param && k != VarKind::Iterator) {
      // Parameters are passed by value; assigning them is allowed.
    }
    if (k == VarKind::Iterator) {
      if (s.op != AssignOp::Set) throw TypeError(s.pos, "compound assignment to iterator");
      bind_iterator(target, *s.expr, s.pos, out);
      return;
    }
    if (s.op == AssignOp::Set) {
      assign_scalar(target, *s.expr, s.pos, out);
      return;
    }
    if (k != VarKind::Int) throw TypeError(s.pos, "compound assignment needs an int");
    require_assigned(target, s.pos);
    static const std::map<AssignOp, BinaryOp> kOps = {{AssignOp::Add, BinaryOp::Add},
                                                      {AssignOp::Sub, BinaryOp::Sub},
                                                      {AssignOp::Mul, BinaryOp::Mul},
                                                      {AssignOp::Div, BinaryOp::Div},
                                                      {AssignOp::Mod, BinaryOp::Mod}};
    Typed rhs = expect_type(*s.expr, VarKind::Int, statement_context(out));
    ir::Stmt st;
    st.kind = ir::StmtKind::Assign;
    st.target = target;
    st.args.push_back(binary(kOps.at(s.op), ir::make_var(target), std::move(rhs.expr)));
    out.push_back(std::move(st));
  }

  ir::Stmt lower_incdec(const Stmt& s) {
    Slot target = lookup(s.target, s.pos);
    if (prog_.vars[target].kind != VarKind::Int) {
      throw TypeError(s.pos, s.target + " is not an int");
    }
    require_assigned(target, s.pos);
    ir::Stmt st;
    st.kind = ir::StmtKind::Assign;
    st.target = target;
    st.args.push_back(binary(s.increment ? BinaryOp::Add : BinaryOp::Sub, ir::make_var(target),
                             ir::make_const(1)));
    return st;
  }

  void lower_call_stmt(const Expr& e, std::vector<ir::Stmt>& out) {
    const Expr& recv = *e.operands[0];
    std::size_t argc = e.operands.size() - 1;
    ExprContext ctx = statement_context(out);
    ir::Stmt st;
    auto int_arg = [&](std::size_t i) {
      return expect_type(*e.operands[i], VarKind::Int, ctx).expr;
    };
    switch (e.method) {
      case Method::Add: {
        st.target = lookup_kind(recv, VarKind::List, "add() receiver");
        if (argc == 1) {
          st.kind = ir::StmtKind::AddLast;
          st.args.push_back(int_arg(1));
        } else if (argc == 2) {
          st.kind = ir::StmtKind::Add;
          st.args.push_back(int_arg(1));
          st.args.push_back(int_arg(2));
        } else {
          throw TypeError(e.pos, "add expects 1 or 2 arguments");
        }
        mutated_.insert(st.target);
        break;
      }
      case Method::Set:
        st.kind = ir::StmtKind::Set;
        st.target = lookup_kind(recv, VarKind::List, "set() receiver");
        if (argc != 2) throw TypeError(e.pos, "set expects 2 argument(s)");
        st.args.push_back(int_arg(1));
        st.args.push_back(int_arg(2));
        mutated_.insert(st.target);
        break;
      case Method::Clear:
        st.kind = ir::StmtKind::Clear;
        st.target = lookup_kind(recv, VarKind::List, "clear() receiver");
        if (argc != 0) throw TypeError(e.pos, "clear expects 0 argument(s)");
        mutated_.insert(st.target);
        break;
      case Method::Remove: {
        if (recv.kind != ExprKind::Variable) {
          throw UnsupportedConstruct(e.pos, "remove() receiver must be a variable");
        }
        Slot s = lookup(recv.name, recv.pos);
        if (prog_.vars[s].kind == VarKind::Iterator) {
          require_assigned(s, recv.pos);
          if (argc != 0) throw TypeError(e.pos, "remove expects 0 argument(s)");
          st.kind = ir::StmtKind::IterRemove;
          st.target = s;
          mutated_.insert(iter_list_.at(s));
        } else {
          st.kind = ir::StmtKind::RemoveAt;
          st.target = lookup_kind(recv, VarKind::List, "remove() receiver");
          if (argc != 1) throw TypeError(e.pos, "remove expects 1 argument(s)");
          st.args.push_back(int_arg(1));
          mutated_.insert(st.target);
        }
        break;
      }
      case Method::Next:
        st.kind = ir::StmtKind::Next;
        st.source = lookup_kind(recv, VarKind::Iterator, "next() receiver");
        if (argc != 0) throw TypeError(e.pos, "next expects 0 argument(s)");
        break;
      case Method::Iterator:
        throw UnsupportedConstruct(e.pos, "iterator() result discarded");
      default: {
        // Pure query evaluated for its exceptions.
        Typed t = lower_expr(e, ctx);
        Slot tmp = temp(t.type, "q");
        flow_.assigned[tmp] = 1;
        st.kind = ir::StmtKind::Assign;
        st.target = tmp;
        st.args.push_back(std::move(t.expr));
        break;
      }
    }
    out.push_back(std::move(st));
  }

  void lower_stmt(const Stmt& s, std::vector<ir::Stmt>& out) {
    switch (s.kind) {
      case StmtKind::VarDecl:
        lower_decl(s, out);
        return;
      case StmtKind::Assign:
        lower_assign(s, out);
        return;
      case StmtKind::IncDec:
        out.push_back(lower_incdec(s));
        return;
      case StmtKind::ExprStmt:
        lower_call_stmt(*s.expr, out);
        return;
      case StmtKind::Block: {
        scopes_.emplace_back();
        for (const auto& inner : s.stmts) lower_stmt(*inner, out);
        scopes_.pop_back();
        return;
      }
      case StmtKind::If:
        lower_if(s, out);
        return;
      case StmtKind::While:
      case StmtKind::For:
      case StmtKind::ForEach:
        lower_loop(s, out);
        return;
      case StmtKind::Break:
      case StmtKind::Continue: {
        if (loop_stack_.empty()) {
          throw BindingError(s.pos, std::string(s.kind == StmtKind::Break ? "break" : "continue") +
                                        " outside a loop");
        }
        if (s.kind == StmtKind::Break) loop_breaks_.back() = true;
        ir::Stmt st;
        st.kind = s.kind == StmtKind::Break ? ir::StmtKind::Break : ir::StmtKind::Continue;
        out.push_back(std::move(st));
        flow_.dead = true;
        return;
      }
      case StmtKind::Return:
        lower_return(s, out);
        return;
    }
  }

  void lower_return(const Stmt& s, std::vector<ir::Stmt>& out) {
    ir::Stmt st;
    st.kind = ir::StmtKind::Return;
    if (ast_.return_type == TypeKind::Void) {
      if (s.expr) throw TypeError(s.pos, "void method returns a value");
    } else {
      if (!s.expr) throw TypeError(s.pos, "missing return value");
      if (ast_.return_type == TypeKind::List) {
        Slot v = lookup_kind(*s.expr, VarKind::List, "returned list");
        st.args.push_back(ir::make_var(v));
        returned_.push_back(v);
      } else {
        VarKind want = var_kind(ast_.return_type);
        const Expr& e = *s.expr;
        if (e.kind == ExprKind::Variable) {
          Slot v = lookup(e.name, e.pos);
          returned_.push_back(prog_.vars[v].kind == want ? v : ir::kNoSlot);
        } else {
          returned_.push_back(ir::kNoSlot);
        }
        st.args.push_back(expect_type(e, want, statement_context(out)).expr);
      }
    }
    out.push_back(std::move(st));
    flow_.dead = true;
  }

  void lower_if(const Stmt& s, std::vector<ir::Stmt>& out) {
    ir::Stmt st;
    st.kind = ir::StmtKind::If;
    st.args.push_back(expect_type(*s.expr, VarKind::Boolean, statement_context(out)).expr);
    Flow before = flow_;
    st.then_block = lower_block(*s.first, true);
    Flow after_then = flow_;
    flow_ = before;
    flow_.assigned.resize(after_then.assigned.size(), 0);
    if (s.second) st.else_block = lower_block(*s.second, true);
    after_then.assigned.resize(flow_.assigned.size(), 0);
    flow_ = Flow::merge(after_then, flow_);
    out.push_back(std::move(st));
  }

  void lower_loop(const Stmt& s, std::vector<ir::Stmt>& out) {
    scopes_.emplace_back();
    ir::Loop loop;
    loop.id = static_cast<int>(prog_.loops.size());
    loop.parent = loop_stack_.empty() ? -1 : loop_stack_.back();
    loop.invariant = "Inv_L" + std::to_string(loop.id);
    prog_.loops.emplace_back();  // reserve the id; filled below

    std::vector<char> bound_before;
    ir::Slot foreach_iter = ir::kNoSlot;
    if (s.kind == StmtKind::For && s.init) {
      if (s.init->kind == StmtKind::VarDecl) {
        lower_decl(*s.init, out);
      } else {
        lower_stmt(*s.init, out);
      }
    }
    if (s.kind == StmtKind::ForEach) {
      Slot list = lookup_kind(*s.expr, VarKind::List, "enhanced for source");
      foreach_iter = temp(VarKind::Iterator, "it");
      iter_list_[foreach_iter] = list;
      ir::Stmt init;
      init.kind = ir::StmtKind::IterInit;
      init.target = foreach_iter;
      init.source = list;
      out.push_back(std::move(init));
      flow_.assigned[foreach_iter] = 1;
      loop.guard.kind = ir::ExprKind::HasNext;
      loop.guard.slot = foreach_iter;
    } else {
      ExprContext guard_ctx{nullptr, "next() in a loop condition"};
      loop.guard = expect_type(*s.expr, VarKind::Boolean, guard_ctx).expr;
    }
    Flow before = flow_;
    loop_stack_.push_back(loop.id);
    loop_breaks_.push_back(false);
    if (s.kind == StmtKind::ForEach) {
      scopes_.emplace_back();
      Slot el = declare(s.target, VarKind::Int, s.pos);
      ir::Stmt next;
      next.kind = ir::StmtKind::Next;
      next.target = el;
      next.source = foreach_iter;
      loop.body.push_back(std::move(next));
      flow_.assigned[el] = 1;
      auto rest = lower_block(*s.first, true);
      for (auto& r : rest) loop.body.push_back(std::move(r));
      scopes_.pop_back();
    } else {
      loop.body = lower_block(*s.first, true);
    }
    if (s.kind == StmtKind::For && s.update) {
      flow_ = before;
      flow_.assigned.resize(prog_.vars.size(), 0);
      std::vector<ir::Stmt> update;
      const Stmt& u = *s.update;
      if (u.kind == StmtKind::IncDec) {
        update.push_back(lower_incdec(u));
      } else if (u.kind == StmtKind::Assign) {
        Slot target = lookup(u.target, u.pos);
        if (prog_.vars[target].kind == VarKind::List || prog_.vars[target].kind == VarKind::Iterator) {
          throw UnsupportedConstruct(u.pos, "reference update in a for header");
        }
        ExprContext none{nullptr, "next() in a for update"};
        std::vector<ir::Stmt> sink;
        if (u.op == AssignOp::Set) {
          ir::Stmt st;
          st.kind = ir::StmtKind::Assign;
          st.target = target;
          st.args.push_back(expect_type(*u.expr, prog_.vars[target].kind, none).expr);
          update.push_back(std::move(st));
        } else {
          lower_assign(u, update);
        }
      } else {
        throw UnsupportedConstruct(u.pos, "call in a for update");
      }
      loop.update = std::move(update);
    }
    loop_stack_.pop_back();
    bool has_break = loop_breaks_.back();
    loop_breaks_.pop_back();

    // After the loop only facts known before it survive.
    flow_ = before;
    flow_.assigned.resize(prog_.vars.size(), 0);
    bool constant_true = loop.guard.kind == ir::ExprKind::Const && loop.guard.value != 0;
    if (constant_true && !has_break) flow_.dead = true;

    loop.traversals = find_traversals(loop, before);
    int id = loop.id;
    prog_.loops[id] = std::move(loop);
    ir::Stmt st;
    st.kind = ir::StmtKind::Loop;
    st.loop = id;
    out.push_back(std::move(st));
    scopes_.pop_back();
  }

  // ---- traversal detection ----

  void iterators_used(const ir::Expr& e, std::set<Slot>& used) const {
    if (e.kind == ir::ExprKind::HasNext) used.insert(e.slot);
    for (const auto& a : e.args) iterators_used(a, used);
  }

  void iterators_used(const std::vector<ir::Stmt>& block, std::set<Slot>& used) const {
    for (const auto& s : block) {
      if (s.kind == ir::StmtKind::Next) used.insert(s.source);
      if (s.kind == ir::StmtKind::IterRemove) used.insert(s.target);
      for (const auto& a : s.args) iterators_used(a, used);
      iterators_used(s.then_block, used);
      iterators_used(s.else_block, used);
      if (s.kind == ir::StmtKind::Loop) {
        const ir::Loop& inner = prog_.loops[s.loop];
        iterators_used(inner.guard, used);
        iterators_used(inner.body, used);
        iterators_used(inner.update, used);
      }
    }
  }

  static bool mentions_size(const ir::Expr& e, Slot& list) {
    if (e.kind == ir::ExprKind::Size) {
      list = e.slot;
      return true;
    }
    if (e.kind == ir::ExprKind::Binary &&
        (e.binary == BinaryOp::Add || e.binary == BinaryOp::Sub)) {
      return mentions_size(e.args[0], list) && e.args[1].kind == ir::ExprKind::Const;
    }
    return false;
  }

  void index_traversals(const ir::Expr& g, std::vector<ir::Traversal>& out) const {
    if (g.kind != ir::ExprKind::Binary) return;
    if (g.binary == BinaryOp::And) {
      index_traversals(g.args[0], out);
      index_traversals(g.args[1], out);
      return;
    }
    const ir::Expr* var = nullptr;
    const ir::Expr* bound = nullptr;
    if (g.binary == BinaryOp::Lt || g.binary == BinaryOp::Le) {
      var = &g.args[0];
      bound = &g.args[1];
    } else if (g.binary == BinaryOp::Gt || g.binary == BinaryOp::Ge) {
      var = &g.args[1];
      bound = &g.args[0];
    } else {
      return;
    }
    Slot list = ir::kNoSlot;
    if (var->kind == ir::ExprKind::Var && mentions_size(*bound, list)) {
      out.push_back({ir::Traversal::Kind::Index, list, var->slot});
    }
  }

  std::vector<ir::Traversal> find_traversals(const ir::Loop& loop, const Flow& before) const {
    std::vector<ir::Traversal> out;
    std::set<Slot> used;
    iterators_used(loop.guard, used);
    iterators_used(loop.body, used);
    for (Slot it : used) {
      if (it < static_cast<Slot>(before.assigned.size()) && before.assigned[it]) {
        out.push_back({ir::Traversal::Kind::Iterator, iter_list_.at(it), it});
      }
    }
    std::vector<ir::Traversal> indexed;
    index_traversals(loop.guard, indexed);
    for (const auto& t : indexed) {
      bool covered = std::any_of(out.begin(), out.end(),
                                 [&](const ir::Traversal& o) { return o.list == t.list; });
      if (!covered) out.push_back(t);
    }
    return out;
  }

  // ---- outputs and heap names ----

  void finish_outputs() {
    for (Slot s : prog_.params) {
      if (prog_.vars[s].kind == VarKind::List && mutated_.count(s)) {
        prog_.outputs.push_back({prog_.vars[s].name, ir::OutputKind::InPlaceList, s,
                                 prog_.vars[s].name});
      }
    }
    if (ast_.return_type == TypeKind::Void) return;
    ir::Output out;
    out.name = std::string(ir::kReturnName);
    out.display = out.name;
    if (!returned_.empty() && returned_[0] != ir::kNoSlot &&
        std::all_of(returned_.begin(), returned_.end(),
                    [&](Slot v) { return v == returned_[0]; }) &&
        !prog_.vars[returned_[0]].is_param) {
      prog_.return_var = returned_[0];
      out.slot = returned_[0];
      out.display = prog_.vars[returned_[0]].name;
    }
    switch (ast_.return_type) {
      case TypeKind::List: out.kind = ir::OutputKind::FreshList; break;
      case TypeKind::Boolean: out.kind = ir::OutputKind::Boolean; break;
      default: out.kind = ir::OutputKind::Int; break;
    }
    prog_.outputs.push_back(std::move(out));
  }

  bool has_mutation(const std::vector<ir::Stmt>& block) const {
    for (const auto& s : block) {
      if (ir::produces_heap(s.kind)) return true;
      if (s.kind == ir::StmtKind::If &&
          (has_mutation(s.then_block) || has_mutation(s.else_block))) {
        return true;
      }
      if (s.kind == ir::StmtKind::Loop) {
        const ir::Loop& l = prog_.loops[s.loop];
        if (has_mutation(l.body) || has_mutation(l.update)) return true;
      }
    }
    return false;
  }

  bool is_unit(const ir::Stmt& s) const {
    if (ir::produces_heap(s.kind)) return true;
    if (s.kind == ir::StmtKind::If) return has_mutation(s.then_block) || has_mutation(s.else_block);
    if (s.kind == ir::StmtKind::Loop) {
      const ir::Loop& l = prog_.loops[s.loop];
      return has_mutation(l.body) || has_mutation(l.update);
    }
    return false;
  }

  static ir::Stmt copy_heap(const std::string& from, const std::string& to) {
    ir::Stmt st;
    st.kind = ir::StmtKind::CopyHeap;
    st.heap_in = from;
    st.heap_out = to;
    return st;
  }

  // The last heap-producing unit of a segment yields `exit`, earlier ones
  // primed variants of it.
  void name_segment(std::vector<ir::Stmt>& block, const std::string& entry,
                    const std::string& exit) {
    std::size_t units = 0;
    for (const auto& s : block) units += is_unit(s) ? 1 : 0;
    if (units == 0) return;
    std::string current = entry;
    std::size_t seen = 0;
    for (std::size_t i = 0; i < block.size(); ++i) {
      if (!is_unit(block[i])) continue;
      ++seen;
      std::string produced = exit + std::string(units - seen, '\'');
      if (ir::produces_heap(block[i].kind)) {
        block[i].heap_in = current;
        block[i].heap_out = produced;
      } else {
        if (current != produced) {
          block.insert(block.begin() + static_cast<std::ptrdiff_t>(i), copy_heap(current, produced));
          ++i;
        }
        ir::Stmt& s = block[i];
        if (s.kind == ir::StmtKind::If) {
          name_segment(s.then_block, produced, produced);
          name_segment(s.else_block, produced, produced);
        } else {
          ir::Loop& l = prog_.loops[s.loop];
          name_segment(l.body, produced, produced);
          name_segment(l.update, produced, produced);
        }
      }
      current = produced;
    }
  }

  void name_heaps() {
    if (has_mutation(prog_.body)) {
      name_segment(prog_.body, "h_i", "h_o");
      return;
    }
    auto pos = prog_.body.end();
    if (!prog_.body.empty() && prog_.body.back().kind == ir::StmtKind::Return) --pos;
    prog_.body.insert(pos, copy_heap("h_i", "h_o"));
  }

  const MiniJProgram& ast_;
  ir::Program prog_;
  std::vector<std::map<std::string, Slot>> scopes_;
  Flow flow_;
  std::vector<int> declared_depth_;
  std::vector<int> loop_stack_;
  std::vector<bool> loop_breaks_;
  std::set<Slot> referenced_;
  std::set<Slot> mutated_;
  std::set<Slot> ever_bound_;
  std::map<Slot, Slot> iter_list_;
  std::vector<Slot> returned_;
  std::vector<std::int64_t> literals_raw_;
  std::vector<std::int32_t> literals_;
  int temp_count_ = 0;
};

}  // namespace

ir::Program lower(const MiniJProgram& program) {
  Lowerer lowerer(program);
  return lowerer.run();
}

ir::Program compile(std::string_view source) { return lower(parse(source)); }

}  // namespace streamline::frontend
