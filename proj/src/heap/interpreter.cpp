#include "streamline/heap/interpreter.hpp"

#include <climits>

namespace streamline::heap {

namespace {

struct Raised {
  Fault fault;
};
struct FuelExhausted {};
struct Stopped {};

enum class Flow { Normal, Break, Continue, Return };

std::int32_t wrap_add(std::int32_t a, std::int32_t b) {
  return static_cast<std::int32_t>(static_cast<std::uint32_t>(a) + static_cast<std::uint32_t>(b));
}
std::int32_t wrap_sub(std::int32_t a, std::int32_t b) {
  return static_cast<std::int32_t>(static_cast<std::uint32_t>(a) - static_cast<std::uint32_t>(b));
}
std::int32_t wrap_mul(std::int32_t a, std::int32_t b) {
  return static_cast<std::int32_t>(static_cast<std::uint32_t>(a) * static_cast<std::uint32_t>(b));
}

struct IterState {
  NodeId list = kNull;
  std::int32_t cursor = 0;
  std::int32_t last_ret = -1;
  std::uint32_t expected_mod = 0;
  std::int32_t consumed = 0;
};

}  // namespace

class Machine {
 public:
  Machine(const ir::Program& p, const ProgramState& s0, std::size_t fuel,
          TraceObserver* observer)
      : p_(p), fuel_(fuel), observer_(observer), heap_(s0.heap) {
    std::size_t n = p.vars.size();
    ints_.assign(n, 0);
    lists_.assign(n, kNull);
    iters_.resize(n);
    mods_.assign(heap_.node_count(), 0);
    for (ir::Slot s : p.params) {
      const auto& v = p.vars[s];
      if (v.kind == ir::VarKind::List) {
        lists_[s] = s0.heap.ref(v.name);
      } else {
        auto value = s0.scalar(v.name);
        if (!value) throw MissingBinding(v.name);
        ints_[s] = *value;
      }
    }
  }

  ProgramState execute() {
    ProgramState out;
    try {
      exec_block(p_.body);
    } catch (const Raised& r) {
      out.status = Status::Exception;
      out.fault = r.fault;
    } catch (const FuelExhausted&) {
      out.status = Status::OutOfFuel;
    } catch (const Stopped&) {
    }
    if (out.status == Status::Normal && returned_) {
      if (p_.return_type == frontend::TypeKind::List) {
        heap_.bind(ir::kReturnName, return_list_);
      } else {
        out.set_scalar(ir::kReturnName, return_value_);
      }
    }
    out.heap = std::move(heap_);
    return out;
  }

  std::int32_t int_at(ir::Slot s) const { return ints_[s]; }
  std::vector<std::int32_t> list_at(ir::Slot s) const { return heap_.values(lists_[s]); }
  void list_into(ir::Slot s, std::vector<std::int32_t>& out) const { heap_.values(lists_[s], out); }
  bool list_bound(ir::Slot s) const { return lists_[s] != kNull; }
  bool iter_bound(ir::Slot s) const { return iters_[s].list != kNull; }
  std::int32_t consumed(ir::Slot s) const { return iters_[s].consumed; }

 private:
  void tick() {
    if (fuel_ == 0) throw FuelExhausted{};
    --fuel_;
  }

  std::int32_t size_of(NodeId list) const {
    return static_cast<std::int32_t>(heap_.length(list));
  }

  // Node before index i (the header for i == 0).
  NodeId before(NodeId list, std::int32_t i) const {
    NodeId n = list;
    for (std::int32_t k = 0; k < i; ++k) n = heap_.at(n).next;
    return n;
  }

  NodeId node_at(NodeId list, std::int32_t i) const { return heap_.at(before(list, i)).next; }

  void check_index(NodeId list, std::int32_t i, bool inclusive) const {
    std::int32_t n = size_of(list);
    if (i < 0 || (inclusive ? i > n : i >= n)) throw Raised{Fault::IndexOutOfBounds};
  }

  void bump(NodeId list) {
    if (static_cast<std::size_t>(list) >= mods_.size()) mods_.resize(heap_.node_count(), 0);
    ++mods_[static_cast<std::size_t>(list)];
  }

  std::uint32_t mod_of(NodeId list) {
    if (static_cast<std::size_t>(list) >= mods_.size()) mods_.resize(heap_.node_count(), 0);
    return mods_[static_cast<std::size_t>(list)];
  }

  std::int32_t eval(const ir::Expr& e) {
    using frontend::BinaryOp;
    switch (e.kind) {
      case ir::ExprKind::Const:
        return e.value;
      case ir::ExprKind::Var:
        return ints_[e.slot];
      case ir::ExprKind::Unary: {
        std::int32_t v = eval(e.args[0]);
        return e.unary == frontend::UnaryOp::Neg ? wrap_sub(0, v) : (v ? 0 : 1);
      }
      case ir::ExprKind::Size:
        return size_of(lists_[e.slot]);
      case ir::ExprKind::Get: {
        std::int32_t i = eval(e.args[0]);
        NodeId list = lists_[e.slot];
        check_index(list, i, false);
        return heap_.at(node_at(list, i)).value;
      }
      case ir::ExprKind::HasNext: {
        const IterState& it = iters_[e.slot];
        return it.cursor != size_of(it.list) ? 1 : 0;
      }
      case ir::ExprKind::Binary:
        break;
    }
    if (e.binary == BinaryOp::And) return eval(e.args[0]) && eval(e.args[1]) ? 1 : 0;
    if (e.binary == BinaryOp::Or) return eval(e.args[0]) || eval(e.args[1]) ? 1 : 0;
    std::int32_t a = eval(e.args[0]);
    std::int32_t b = eval(e.args[1]);
    switch (e.binary) {
      case BinaryOp::Add: return wrap_add(a, b);
      case BinaryOp::Sub: return wrap_sub(a, b);
      case BinaryOp::Mul: return wrap_mul(a, b);
      case BinaryOp::Div:
        if (b == 0) throw Raised{Fault::Arithmetic};
        if (a == INT32_MIN && b == -1) return INT32_MIN;
        return a / b;
      case BinaryOp::Mod:
        if (b == 0) throw Raised{Fault::Arithmetic};
        if (b == -1) return 0;
        return a % b;
      case BinaryOp::Lt: return a < b;
      case BinaryOp::Le: return a <= b;
      case BinaryOp::Gt: return a > b;
      case BinaryOp::Ge: return a >= b;
      case BinaryOp::Eq: return a == b;
      case BinaryOp::Ne: return a != b;
      default: return 0;
    }
  }

  void check_comod(const IterState& it) {
    if (mod_of(it.list) != it.expected_mod) throw Raised{Fault::ConcurrentModification};
  }

  Flow exec_block(const std::vector<ir::Stmt>& block) {
    for (const auto& s : block) {
      Flow f = exec(s);
      if (f != Flow::Normal) return f;
    }
    return Flow::Normal;
  }

  Flow exec(const ir::Stmt& s) {
    tick();
    switch (s.kind) {
      case ir::StmtKind::Assign:
        ints_[s.target] = eval(s.args[0]);
        return Flow::Normal;
      case ir::StmtKind::NewList: {
        std::vector<std::int32_t> init;
        if (s.source != ir::kNoSlot) init = heap_.values(lists_[s.source]);
        lists_[s.target] = heap_.make_list(init);
        return Flow::Normal;
      }
      case ir::StmtKind::IterInit: {
        IterState& it = iters_[s.target];
        it = IterState{};
        it.list = lists_[s.source];
        it.expected_mod = mod_of(it.list);
        return Flow::Normal;
      }
      case ir::StmtKind::Next: {
        IterState& it = iters_[s.source];
        check_comod(it);
        if (it.cursor >= size_of(it.list)) throw Raised{Fault::NoSuchElement};
        std::int32_t v = heap_.at(node_at(it.list, it.cursor)).value;
        it.last_ret = it.cursor++;
        ++it.consumed;
        if (s.target != ir::kNoSlot) ints_[s.target] = v;
        return Flow::Normal;
      }
      case ir::StmtKind::IterRemove: {
        IterState& it = iters_[s.target];
        if (it.last_ret < 0) throw Raised{Fault::IllegalState};
        check_comod(it);
        NodeId prev = before(it.list, it.last_ret);
        heap_.at(prev).next = heap_.at(heap_.at(prev).next).next;
        it.cursor = it.last_ret;
        it.last_ret = -1;
        bump(it.list);
        it.expected_mod = mod_of(it.list);
        return Flow::Normal;
      }
      case ir::StmtKind::Add: {
        std::int32_t i = eval(s.args[0]);
        std::int32_t v = eval(s.args[1]);
        NodeId list = lists_[s.target];
        check_index(list, i, true);
        NodeId prev = before(list, i);
        NodeId fresh = heap_.make_node(v, heap_.at(prev).next);
        heap_.at(prev).next = fresh;
        bump(list);
        return Flow::Normal;
      }
      case ir::StmtKind::AddLast: {
        std::int32_t v = eval(s.args[0]);
        NodeId list = lists_[s.target];
        NodeId prev = before(list, size_of(list));
        NodeId fresh = heap_.make_node(v, kNull);
        heap_.at(prev).next = fresh;
        bump(list);
        return Flow::Normal;
      }
      case ir::StmtKind::Set: {
        std::int32_t i = eval(s.args[0]);
        std::int32_t v = eval(s.args[1]);
        NodeId list = lists_[s.target];
        check_index(list, i, false);
        heap_.at(node_at(list, i)).value = v;
        return Flow::Normal;
      }
      case ir::StmtKind::RemoveAt: {
        std::int32_t i = eval(s.args[0]);
        NodeId list = lists_[s.target];
        check_index(list, i, false);
        NodeId prev = before(list, i);
        heap_.at(prev).next = heap_.at(heap_.at(prev).next).next;
        bump(list);
        return Flow::Normal;
      }
      case ir::StmtKind::Clear: {
        NodeId list = lists_[s.target];
        heap_.at(list).next = kNull;
        bump(list);
        return Flow::Normal;
      }
      case ir::StmtKind::CopyHeap:
        return Flow::Normal;
      case ir::StmtKind::If:
        return eval(s.args[0]) ? exec_block(s.then_block) : exec_block(s.else_block);
      case ir::StmtKind::Loop:
        return exec_loop(p_.loops[s.loop]);
      case ir::StmtKind::Break:
        return Flow::Break;
      case ir::StmtKind::Continue:
        return Flow::Continue;
      case ir::StmtKind::Return:
        returned_ = true;
        if (!s.args.empty()) {
          if (p_.return_type == frontend::TypeKind::List) {
            return_list_ = lists_[s.args[0].slot];
          } else {
            return_value_ = eval(s.args[0]);
          }
        }
        return Flow::Return;
    }
    return Flow::Normal;
  }

  Flow exec_loop(const ir::Loop& loop) {
    bool entry = true;
    while (true) {
      tick();
      if (observer_ && !observer_->on_loop_head(LoopView(*this, loop.id, entry))) {
        throw Stopped{};
      }
      entry = false;
      if (!eval(loop.guard)) break;
      Flow f = exec_block(loop.body);
      if (f == Flow::Return) return f;
      if (f == Flow::Break) break;
      exec_block(loop.update);
    }
    if (observer_ && !observer_->on_loop_exit(LoopView(*this, loop.id, false))) {
      throw Stopped{};
    }
    return Flow::Normal;
  }

  const ir::Program& p_;
  std::size_t fuel_;
  TraceObserver* observer_;
  Heap heap_;
  std::vector<std::int32_t> ints_;
  std::vector<NodeId> lists_;
  std::vector<IterState> iters_;
  std::vector<std::uint32_t> mods_;
  bool returned_ = false;
  NodeId return_list_ = kNull;
  std::int32_t return_value_ = 0;
};

std::optional<std::int32_t> LoopView::scalar(ir::Slot slot) const {
  return m_.int_at(slot);
}

std::vector<std::int32_t> LoopView::list(ir::Slot slot) const {
  if (!m_.list_bound(slot)) return {};
  return m_.list_at(slot);
}

void LoopView::list(ir::Slot slot, std::vector<std::int32_t>& out) const {
  out.clear();
  if (m_.list_bound(slot)) m_.list_into(slot, out);
}

std::optional<std::int32_t> LoopView::progress(const ir::Traversal& t) const {
  if (t.kind == ir::Traversal::Kind::Index) return m_.int_at(t.var);
  if (!m_.iter_bound(t.var)) return std::nullopt;
  return m_.consumed(t.var);
}

ProgramState run(const ir::Program& p, const ProgramState& s0, std::size_t fuel) {
  Machine m(p, s0, fuel, nullptr);
  return m.execute();
}

ProgramState run_traced(const ir::Program& p, const ProgramState& s0, std::size_t fuel,
                        TraceObserver& observer) {
  Machine m(p, s0, fuel, &observer);
  return m.execute();
}

}  // namespace streamline::heap
