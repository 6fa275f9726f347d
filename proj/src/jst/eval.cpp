#include "streamline/jst/eval.hpp"

#include <algorithm>
#include <climits>

namespace streamline::jst {

namespace {

using heap::Heap;
using heap::kNull;
using heap::NodeId;
using heap::Node;

NodeId lookup(const Heap& h, std::string_view name) {
  if (name == kNullRef) return kNull;
  auto id = h.lookup(name);
  if (!id) throw JstError(JstErrorKind::MissingBinding, std::string(name));
  return *id;
}

NodeId position(const Heap& h, std::string_view name) {
  return h.position(lookup(h, name));
}

std::vector<NodeId> segment(const Heap& h, std::string_view x, std::string_view y) {
  NodeId end = position(h, y);
  std::vector<NodeId> nodes;
  for (NodeId n = position(h, x); n != end; n = h.at(n).next) {
    if (n == kNull) {
      throw JstError(JstErrorKind::IllFormedSegment,
                     std::string(y) + " is not reachable from " + std::string(x));
    }
    nodes.push_back(n);
  }
  return nodes;
}

std::vector<std::int32_t> values(const Heap& h, const std::vector<NodeId>& nodes) {
  std::vector<std::int32_t> out;
  out.reserve(nodes.size());
  for (NodeId n : nodes) out.push_back(h.at(n).value);
  return out;
}

std::int32_t int_arg(const IntArg& a, const Env& env) {
  if (const auto* i = std::get_if<std::int32_t>(&a.v)) return *i;
  const auto& name = std::get<std::string>(a.v);
  auto it = env.scalars.find(name);
  if (it == env.scalars.end()) throw JstError(JstErrorKind::MissingBinding, name);
  return it->second;
}

// Node at index i counted from the position of x; i == length gives null.
NodeId nth(const Heap& h, std::string_view x, std::int32_t i) {
  if (i < 0) throw JstError(JstErrorKind::IndexOutOfRange, std::to_string(i));
  NodeId n = position(h, x);
  for (std::int32_t k = 0; k < i; ++k) {
    if (n == kNull) throw JstError(JstErrorKind::IndexOutOfRange, std::to_string(i));
    n = h.at(n).next;
  }
  return n;
}

// Unlinks `target`; references to it move to its successor.
void unlink(Heap& h, NodeId target) {
  NodeId succ = h.at(target).next;
  for (std::size_t i = 0; i < h.node_count(); ++i) {
    Node& n = h.at(static_cast<NodeId>(i));
    if (n.next == target) n.next = succ;
  }
  std::vector<std::string> moved;
  for (const auto& [name, id] : h.refs()) {
    if (id == target) moved.push_back(name);
  }
  for (const auto& name : moved) h.bind(name, succ);
}

void bind_list(Heap& h, std::string_view ret, const std::vector<std::int32_t>& vals) {
  h.bind(ret, h.make_list(vals));
}

std::vector<std::int32_t> selection_sorted(std::vector<std::int32_t> rest) {
  // sorted(x) = add0(sorted(removeVal(x, min)), min): repeated extraction
  // of the first minimum.
  std::vector<std::int32_t> out;
  out.reserve(rest.size());
  while (!rest.empty()) {
    auto m = std::min_element(rest.begin(), rest.end());
    out.push_back(*m);
    rest.erase(m);
  }
  return out;
}

}  // namespace

const char* to_string(JstErrorKind kind) {
  switch (kind) {
    case JstErrorKind::IllFormedSegment: return "IllFormedSegment";
    case JstErrorKind::MissingBinding: return "MissingBinding";
    case JstErrorKind::ArityMismatch: return "ArityMismatch";
    case JstErrorKind::IndexOutOfRange: return "IndexOutOfRange";
  }
  return "?";
}

void validate(const JstOp& op) {
  const Signature& sig = signature(op.code);
  auto fail = [&](const std::string& why) {
    throw JstError(JstErrorKind::ArityMismatch, std::string(to_string(op.code)) + ": " + why);
  };
  if (op.refs.size() != sig.refs) fail("expected " + std::to_string(sig.refs) + " references");
  if (op.ints.size() != sig.ints) fail("expected " + std::to_string(sig.ints) + " integers");
  switch (sig.lambda) {
    case LambdaKind::None:
      if (op.fn) fail("unexpected lambda");
      break;
    case LambdaKind::Predicate:
      if (!op.fn || !std::holds_alternative<Predicate>(*op.fn)) fail("expected a predicate");
      break;
    case LambdaKind::Mapper:
      if (!op.fn || !std::holds_alternative<Mapper>(*op.fn)) fail("expected a mapper");
      break;
    case LambdaKind::Accumulator:
      if (!op.fn || !std::holds_alternative<Accumulator>(*op.fn)) fail("expected an accumulator");
      break;
  }
}

std::vector<std::int32_t> segment_values(const heap::Heap& h, std::string_view x,
                                         std::string_view y) {
  return values(h, segment(h, x, y));
}

OpResult eval_op(const JstOp& op, heap::Heap h, const Env& env) {
  validate(op);
  const auto& r = op.refs;
  OpResult out;
  auto seg_values = [&]() { return values(h, segment(h, r[0], r[1])); };
  switch (op.code) {
    case Opcode::Add: {
      std::int32_t i = int_arg(op.ints[0], env);
      std::int32_t v = int_arg(op.ints[1], env);
      NodeId x = lookup(h, r[0]);
      if (i == 0) {
        if (x == kNull || !h.at(x).header) {
          throw JstError(JstErrorKind::IndexOutOfRange, "insertion before a non-list reference");
        }
        NodeId fresh = h.make_node(v, h.at(x).next);
        h.at(x).next = fresh;
      } else {
        NodeId prev = nth(h, r[0], i - 1);
        if (prev == kNull) throw JstError(JstErrorKind::IndexOutOfRange, std::to_string(i));
        NodeId fresh = h.make_node(v, h.at(prev).next);
        h.at(prev).next = fresh;
      }
      break;
    }
    case Opcode::AddLast: {
      std::int32_t v = int_arg(op.ints[0], env);
      NodeId x = lookup(h, r[0]);
      if (x == kNull) throw JstError(JstErrorKind::IndexOutOfRange, "add_last on null");
      NodeId last = x;
      while (h.at(last).next != kNull) last = h.at(last).next;
      NodeId fresh = h.make_node(v, kNull);
      h.at(last).next = fresh;
      break;
    }
    case Opcode::Set: {
      NodeId n = nth(h, r[0], int_arg(op.ints[0], env));
      if (n == kNull) throw JstError(JstErrorKind::IndexOutOfRange, "set past the end");
      h.at(n).value = int_arg(op.ints[1], env);
      break;
    }
    case Opcode::Get: {
      NodeId n = nth(h, r[0], int_arg(op.ints[0], env));
      if (n == kNull) throw JstError(JstErrorKind::IndexOutOfRange, "get past the end");
      out.value = h.at(n).value;
      break;
    }
    case Opcode::Size:
      out.value = static_cast<std::int32_t>(segment(h, r[0], r[1]).size());
      break;
    case Opcode::Alias:
      out.value = position(h, r[0]) == position(h, r[1]) ? 1 : 0;
      break;
    case Opcode::Remove: {
      NodeId target = position(h, r[0]);
      if (target == kNull) throw JstError(JstErrorKind::IndexOutOfRange, "remove from empty");
      unlink(h, target);
      break;
    }
    case Opcode::RemoveVal: {
      std::int32_t v = int_arg(op.ints[0], env);
      for (NodeId n : segment(h, r[0], r[1])) {
        if (h.at(n).value == v) {
          unlink(h, n);
          break;
        }
      }
      break;
    }
    case Opcode::Exists: {
      const auto& p = std::get<Predicate>(*op.fn);
      auto vals = seg_values();
      out.value = std::any_of(vals.begin(), vals.end(), [&](std::int32_t v) { return p.eval(v); });
      break;
    }
    case Opcode::Forall: {
      const auto& p = std::get<Predicate>(*op.fn);
      auto vals = seg_values();
      out.value = std::all_of(vals.begin(), vals.end(), [&](std::int32_t v) { return p.eval(v); });
      break;
    }
    case Opcode::Sorted:
      bind_list(h, r[2], selection_sorted(seg_values()));
      break;
    case Opcode::Min: {
      auto vals = seg_values();
      out.value = vals.empty() ? INT32_MAX : *std::min_element(vals.begin(), vals.end());
      break;
    }
    case Opcode::Max: {
      auto vals = seg_values();
      out.value = vals.empty() ? INT32_MIN : *std::max_element(vals.begin(), vals.end());
      break;
    }
    case Opcode::Filter: {
      const auto& p = std::get<Predicate>(*op.fn);
      std::vector<std::int32_t> kept;
      for (std::int32_t v : seg_values()) {
        if (p.eval(v)) kept.push_back(v);
      }
      bind_list(h, r[2], kept);
      break;
    }
    case Opcode::Map: {
      const auto& m = std::get<Mapper>(*op.fn);
      auto vals = seg_values();
      for (auto& v : vals) v = m.eval(v);
      bind_list(h, r[2], vals);
      break;
    }
    case Opcode::Skip:
    case Opcode::Limit: {
      std::int32_t done = int_arg(op.ints[0], env);
      std::int32_t n = int_arg(op.ints[1], env);
      if (n < 0 || done < 0 || done > n) {
        throw JstError(JstErrorKind::IndexOutOfRange, "negative count");
      }
      auto nodes = segment(h, r[0], r[1]);
      std::size_t k = std::min<std::size_t>(static_cast<std::size_t>(n - done), nodes.size());
      if (op.code == Opcode::Limit) {
        nodes.resize(k);
        bind_list(h, r[2], values(h, nodes));
      } else if (r[1] == kNullRef) {
        // Skipping to the end of a list shares its tail.
        NodeId header = h.make_list();
        h.at(header).next = k < nodes.size() ? nodes[k] : kNull;
        h.bind(r[2], header);
      } else {
        nodes.erase(nodes.begin(), nodes.begin() + static_cast<std::ptrdiff_t>(k));
        bind_list(h, r[2], values(h, nodes));
      }
      break;
    }
    case Opcode::Reduce: {
      // reduce(x) = f(val(x), reduce(next(x))), reduce(empty) = v.
      const auto& f = std::get<Accumulator>(*op.fn);
      auto vals = seg_values();
      std::int32_t acc = int_arg(op.ints[0], env);
      for (auto it = vals.rbegin(); it != vals.rend(); ++it) acc = f.eval(*it, acc);
      out.value = acc;
      break;
    }
    case Opcode::Concat: {
      auto first = seg_values();
      auto second = values(h, segment(h, r[2], r[3]));
      first.insert(first.end(), second.begin(), second.end());
      bind_list(h, r[4], first);
      break;
    }
    case Opcode::Copy:
      bind_list(h, r[2], seg_values());
      break;
    case Opcode::New:
      h.bind(r[0], h.make_list());
      break;
    case Opcode::EqualLists: {
      const Heap* other = &h;
      if (!op.heap_other.empty() && op.heap_other != op.heap_in) {
        auto it = env.heaps.find(op.heap_other);
        if (it == env.heaps.end()) throw JstError(JstErrorKind::MissingBinding, op.heap_other);
        other = &it->second;
      }
      out.value = seg_values() == values(*other, segment(*other, r[2], r[3])) ? 1 : 0;
      break;
    }
    case Opcode::GetIterator: {
      NodeId n = nth(h, r[0], int_arg(op.ints[0], env));
      h.bind(r[1], n);
      break;
    }
  }
  out.heap = std::move(h);
  return out;
}

}  // namespace streamline::jst
