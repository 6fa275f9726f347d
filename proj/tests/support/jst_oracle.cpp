#include "jst_oracle.hpp"

#include <algorithm>
#include <climits>
#include <functional>
#include <map>
#include <optional>
#include <set>

#include "streamline/jst/eval.hpp"

namespace streamline::testing {

namespace {

using jst::JstErrorKind;
using jst::JstOp;
using jst::Opcode;

// Lists as arrays of cells; a cell id stands for node identity so that
// references survive insertions and removals.
struct Cell {
  std::int32_t value;
  int id;
};

struct Model {
  std::vector<std::vector<Cell>> lists;  // "a", "b"
  std::map<std::string, int> iters;      // iterator name -> cell id, -1 for null
  int next_id = 0;
};

const char* kListNames[] = {"a", "b"};

struct Failure {
  JstErrorKind kind;
};

struct Expected {
  std::optional<Failure> error;
  std::optional<std::int32_t> value;
  Model after;
  std::optional<std::vector<std::int32_t>> ret;
};

int list_index(const Model& m, const std::string& name) {
  for (std::size_t i = 0; i < m.lists.size(); ++i) {
    if (name == kListNames[i]) return static_cast<int>(i);
  }
  return -1;
}

// Cell id at the position of a reference; -1 is null.
int pos(const Model& m, const std::string& name) {
  if (name == "null") return -1;
  int li = list_index(m, name);
  if (li >= 0) return m.lists[li].empty() ? -1 : m.lists[li][0].id;
  return m.iters.at(name);
}

std::pair<int, int> locate(const Model& m, int id) {
  for (std::size_t i = 0; i < m.lists.size(); ++i) {
    for (std::size_t k = 0; k < m.lists[i].size(); ++k) {
      if (m.lists[i][k].id == id) return {static_cast<int>(i), static_cast<int>(k)};
    }
  }
  return {-1, -1};
}

// Cells from x up to (excluding) y, or nullopt when y is not reachable.
std::optional<std::vector<Cell>> seg(const Model& m, const std::string& x, const std::string& y) {
  int start = pos(m, x);
  int end = pos(m, y);
  std::vector<Cell> out;
  if (start == -1) {
    if (end == -1) return out;
    return std::nullopt;
  }
  auto [li, k] = locate(m, start);
  const auto& list = m.lists[li];
  for (std::size_t i = static_cast<std::size_t>(k); i < list.size(); ++i) {
    if (list[i].id == end) return out;
    out.push_back(list[i]);
  }
  if (end == -1) return out;
  return std::nullopt;
}

std::vector<std::int32_t> vals(const std::vector<Cell>& cells) {
  std::vector<std::int32_t> out;
  for (const auto& c : cells) out.push_back(c.value);
  return out;
}

Expected fail(JstErrorKind k) {
  Expected e;
  e.error = Failure{k};
  return e;
}

// Cell reached by walking i steps from the position of x; -1 when the walk
// ends exactly at null, nullopt when it runs past the end.
std::optional<int> nth(const Model& m, const std::string& x, std::int32_t i) {
  if (i < 0) return std::nullopt;
  int start = pos(m, x);
  if (start == -1) return i == 0 ? std::optional<int>(-1) : std::nullopt;
  auto [li, k] = locate(m, start);
  std::size_t target = static_cast<std::size_t>(k) + static_cast<std::size_t>(i);
  const auto& list = m.lists[li];
  if (target < list.size()) return list[target].id;
  if (target == list.size()) return -1;
  return std::nullopt;
}

heap::Heap build(const Model& m) {
  heap::Heap h;
  std::map<int, heap::NodeId> nodes;
  for (std::size_t i = 0; i < m.lists.size(); ++i) {
    heap::NodeId header = h.make_list(vals(m.lists[i]));
    h.bind(kListNames[i], header);
    heap::NodeId n = h.at(header).next;
    for (const auto& c : m.lists[i]) {
      nodes[c.id] = n;
      n = h.at(n).next;
    }
  }
  for (const auto& [name, id] : m.iters) h.bind(name, id == -1 ? heap::kNull : nodes.at(id));
  return h;
}

std::vector<std::int32_t> rest_of(const Model& m, int id) {
  if (id == -1) return {};
  auto [li, k] = locate(m, id);
  std::vector<std::int32_t> out;
  for (std::size_t i = static_cast<std::size_t>(k); i < m.lists[li].size(); ++i) {
    out.push_back(m.lists[li][i].value);
  }
  return out;
}

void unlink(Model& m, int id) {
  auto [li, k] = locate(m, id);
  auto& list = m.lists[li];
  int succ = static_cast<std::size_t>(k) + 1 < list.size() ? list[k + 1].id : -1;
  list.erase(list.begin() + k);
  for (auto& [name, it] : m.iters) {
    if (it == id) it = succ;
  }
}

struct Case {
  JstOp op;
  std::function<Expected(const Model&)> oracle;
};

JstOp make(Opcode code, std::vector<std::string> refs, std::vector<jst::IntArg> ints = {},
           std::optional<jst::Lambda> fn = std::nullopt) {
  JstOp op;
  op.code = code;
  op.heap_in = "h";
  op.heap_out = "h2";
  op.result = "out";
  op.refs = std::move(refs);
  op.ints = std::move(ints);
  op.fn = std::move(fn);
  return op;
}

std::vector<jst::Predicate> predicates() {
  using jst::Atom;
  using jst::CmpOp;
  return {
      jst::Predicate{},
      jst::Predicate{{Atom{CmpOp::Gt, 0, 0}}},
      jst::Predicate{{Atom{CmpOp::Le, -1, 0}}},
      jst::Predicate{{Atom{CmpOp::Eq, 0, 2}}},
      jst::Predicate{{Atom{CmpOp::Ne, 1, 2}, Atom{CmpOp::Ge, -1, 0}}},
  };
}

std::vector<jst::Mapper> mappers() { return {{2, 0}, {-1, 1}, {0, 3}}; }

std::int32_t apply_acc(jst::AccumulatorKind k, std::int32_t a, std::int32_t b) {
  switch (k) {
    case jst::AccumulatorKind::Sum:
      return static_cast<std::int32_t>(static_cast<std::uint32_t>(a) + static_cast<std::uint32_t>(b));
    case jst::AccumulatorKind::Product:
      return static_cast<std::int32_t>(static_cast<std::uint32_t>(a) * static_cast<std::uint32_t>(b));
    case jst::AccumulatorKind::Min: return std::min(a, b);
    case jst::AccumulatorKind::Max: return std::max(a, b);
  }
  return 0;
}

bool pred_holds(const jst::Predicate& p, std::int32_t v) {
  for (const auto& a : p.atoms) {
    std::int32_t lhs = a.modulus != 0 ? v % a.modulus : v;
    bool ok = false;
    switch (a.op) {
      case jst::CmpOp::Gt: ok = lhs > a.constant; break;
      case jst::CmpOp::Ge: ok = lhs >= a.constant; break;
      case jst::CmpOp::Lt: ok = lhs < a.constant; break;
      case jst::CmpOp::Le: ok = lhs <= a.constant; break;
      case jst::CmpOp::Eq: ok = lhs == a.constant; break;
      case jst::CmpOp::Ne: ok = lhs != a.constant; break;
    }
    if (!ok) return false;
  }
  return true;
}

// Oracle for an operation that reads one segment and produces a value or a
// fresh list bound to "r".
template <typename F>
Case segment_case(JstOp op, const std::string& x, const std::string& y, F f) {
  return {std::move(op), [x, y, f](const Model& m) {
            auto s = seg(m, x, y);
            if (!s) return fail(JstErrorKind::IllFormedSegment);
            Expected e;
            e.after = m;
            f(vals(*s), e);
            return e;
          }};
}

std::vector<Case> cases_for(const Model& m, std::size_t variant) {
  std::vector<std::string> refs;
  for (std::size_t i = 0; i < m.lists.size(); ++i) refs.push_back(kListNames[i]);
  for (const auto& [name, id] : m.iters) refs.push_back(name);
  std::vector<std::string> ends = refs;
  ends.push_back("null");

  auto preds = predicates();
  auto maps = mappers();
  const jst::AccumulatorKind accs[] = {jst::AccumulatorKind::Sum, jst::AccumulatorKind::Product,
                                       jst::AccumulatorKind::Min, jst::AccumulatorKind::Max};
  const std::pair<std::int32_t, std::int32_t> counts[] = {{0, 0}, {0, 1}, {0, 2}, {1, 3},
                                                          {0, 5}, {0, -1}, {2, 1}};
  std::vector<Case> out;
  std::size_t pick = variant;
  auto next = [&](std::size_t n) { return (pick++) % n; };

  for (const auto& x : refs) {
    for (const auto& y : ends) {
      std::size_t first = out.size();
      out.push_back(segment_case(make(Opcode::Size, {x, y}), x, y, [](auto v, Expected& e) {
        e.value = static_cast<std::int32_t>(v.size());
      }));
      const auto& p = preds[next(preds.size())];
      out.push_back(segment_case(make(Opcode::Exists, {x, y}, {}, p), x, y, [p](auto v, Expected& e) {
        bool any = false;
        for (auto w : v) any = any || pred_holds(p, w);
        e.value = any;
      }));
      const auto& q = preds[next(preds.size())];
      out.push_back(segment_case(make(Opcode::Forall, {x, y}, {}, q), x, y, [q](auto v, Expected& e) {
        bool all = true;
        for (auto w : v) all = all && pred_holds(q, w);
        e.value = all;
      }));
      out.push_back(segment_case(make(Opcode::Sorted, {x, y, "r"}), x, y, [](auto v, Expected& e) {
        std::sort(v.begin(), v.end());
        e.ret = v;
      }));
      out.push_back(segment_case(make(Opcode::Min, {x, y}), x, y, [](auto v, Expected& e) {
        std::int32_t best = INT32_MAX;
        for (auto w : v) best = std::min(best, w);
        e.value = best;
      }));
      out.push_back(segment_case(make(Opcode::Max, {x, y}), x, y, [](auto v, Expected& e) {
        std::int32_t best = INT32_MIN;
        for (auto w : v) best = std::max(best, w);
        e.value = best;
      }));
      const auto& fp = preds[next(preds.size())];
      out.push_back(segment_case(make(Opcode::Filter, {x, y, "r"}, {}, fp), x, y,
                                 [fp](auto v, Expected& e) {
                                   std::vector<std::int32_t> kept;
                                   for (auto w : v) {
                                     if (pred_holds(fp, w)) kept.push_back(w);
                                   }
                                   e.ret = kept;
                                 }));
      const auto& mp = maps[next(maps.size())];
      out.push_back(segment_case(make(Opcode::Map, {x, y, "r"}, {}, mp), x, y,
                                 [mp](auto v, Expected& e) {
                                   for (auto& w : v) {
                                     w = static_cast<std::int32_t>(
                                         static_cast<std::uint32_t>(mp.scale) *
                                             static_cast<std::uint32_t>(w) +
                                         static_cast<std::uint32_t>(mp.offset));
                                   }
                                   e.ret = v;
                                 }));
      for (Opcode code : {Opcode::Skip, Opcode::Limit}) {
        auto [done, n] = counts[next(std::size(counts))];
        JstOp op = make(code, {x, y, "r"}, {done, n});
        out.push_back({op, [x, y, code, done, n](const Model& m) {
                         if (n < 0 || done < 0 || done > n) return fail(JstErrorKind::IndexOutOfRange);
                         auto s = seg(m, x, y);
                         if (!s) return fail(JstErrorKind::IllFormedSegment);
                         auto v = vals(*s);
                         std::size_t k = std::min<std::size_t>(n - done, v.size());
                         Expected e;
                         e.after = m;
                         e.ret = code == Opcode::Limit
                                     ? std::vector<std::int32_t>(v.begin(), v.begin() + k)
                                     : std::vector<std::int32_t>(v.begin() + k, v.end());
                         return e;
                       }});
      }
      auto acc = accs[next(std::size(accs))];
      std::int32_t identity = static_cast<std::int32_t>(next(2));
      out.push_back(segment_case(make(Opcode::Reduce, {x, y}, {identity}, jst::Accumulator{acc}), x,
                                 y, [acc, identity](auto v, Expected& e) {
                                   std::int32_t r = identity;
                                   for (auto it = v.rbegin(); it != v.rend(); ++it)
                                     r = apply_acc(acc, *it, r);
                                   e.value = r;
                                 }));
      out.push_back(segment_case(make(Opcode::Copy, {x, y, "r"}), x, y,
                                 [](auto v, Expected& e) { e.ret = v; }));
      out.push_back({make(Opcode::Alias, {x, y}), [x, y](const Model& m) {
                       Expected e;
                       e.after = m;
                       e.value = pos(m, x) == pos(m, y);
                       return e;
                     }});
      std::int32_t target = static_cast<std::int32_t>(next(5)) - 2;
      out.push_back({make(Opcode::RemoveVal, {x, y}, {target}), [x, y, target](const Model& m) {
                       auto s = seg(m, x, y);
                       if (!s) return fail(JstErrorKind::IllFormedSegment);
                       Expected e;
                       e.after = m;
                       for (const auto& c : *s) {
                         if (c.value == target) {
                           unlink(e.after, c.id);
                           break;
                         }
                       }
                       return e;
                     }});
      // Two-segment operations against a second segment picked per case.
      const auto& x2 = refs[next(refs.size())];
      const auto& y2 = ends[next(ends.size())];
      out.push_back({make(Opcode::Concat, {x, y, x2, y2, "r"}), [x, y, x2, y2](const Model& m) {
                       auto s1 = seg(m, x, y);
                       if (!s1) return fail(JstErrorKind::IllFormedSegment);
                       auto s2 = seg(m, x2, y2);
                       if (!s2) return fail(JstErrorKind::IllFormedSegment);
                       Expected e;
                       e.after = m;
                       auto v = vals(*s1);
                       auto w = vals(*s2);
                       v.insert(v.end(), w.begin(), w.end());
                       e.ret = v;
                       return e;
                     }});
      JstOp eq = make(Opcode::EqualLists, {x, y, x2, y2});
      eq.heap_other = "h";
      out.push_back({eq, [x, y, x2, y2](const Model& m) {
                       auto s1 = seg(m, x, y);
                       if (!s1) return fail(JstErrorKind::IllFormedSegment);
                       auto s2 = seg(m, x2, y2);
                       if (!s2) return fail(JstErrorKind::IllFormedSegment);
                       Expected e;
                       e.after = m;
                       e.value = vals(*s1) == vals(*s2);
                       return e;
                     }});
      // An ill-formed [x, y) fails every segment operation the same way;
      // one operation per heap, rotating, covers that path.
      if (!seg(m, x, y)) {
        std::vector<Case> kept;
        std::size_t n = out.size() - first;
        for (std::size_t i = first; i < out.size(); ++i) {
          if (out[i].op.code == Opcode::Alias || i - first == variant % n) kept.push_back(std::move(out[i]));
        }
        out.resize(first);
        for (auto& c : kept) out.push_back(std::move(c));
      }
    }
  }

  for (const auto& x : refs) {
    bool is_list = list_index(m, x) >= 0;
    // Indices past len + 1 take the same out-of-range path as len + 1.
    auto reach = static_cast<std::int32_t>(seg(m, x, "null")->size());
    for (std::int32_t i = -1; i <= reach + 1; ++i) {
      out.push_back({make(Opcode::Get, {x}, {i}), [x, i](const Model& m) {
                       auto n = nth(m, x, i);
                       if (!n || *n == -1) return fail(JstErrorKind::IndexOutOfRange);
                       Expected e;
                       e.after = m;
                       e.value = m.lists[locate(m, *n).first][locate(m, *n).second].value;
                       return e;
                     }});
      out.push_back({make(Opcode::Set, {x}, {i, 9}), [x, i](const Model& m) {
                       auto n = nth(m, x, i);
                       if (!n || *n == -1) return fail(JstErrorKind::IndexOutOfRange);
                       Expected e;
                       e.after = m;
                       auto [li, k] = locate(m, *n);
                       e.after.lists[li][k].value = 9;
                       return e;
                     }});
      out.push_back({make(Opcode::Add, {x}, {i, 8}), [x, i, is_list](const Model& m) {
                       Expected e;
                       e.after = m;
                       Cell fresh{8, e.after.next_id++};
                       if (i == 0) {
                         if (!is_list) return fail(JstErrorKind::IndexOutOfRange);
                         auto& list = e.after.lists[list_index(m, x)];
                         list.insert(list.begin(), fresh);
                         return e;
                       }
                       auto prev = nth(m, x, i - 1);
                       if (!prev || *prev == -1) return fail(JstErrorKind::IndexOutOfRange);
                       auto [li, k] = locate(m, *prev);
                       auto& list = e.after.lists[li];
                       list.insert(list.begin() + k + 1, fresh);
                       return e;
                     }});
      out.push_back({make(Opcode::GetIterator, {x, "it2"}, {i}), [x, i](const Model& m) {
                       auto n = nth(m, x, i);
                       if (!n) return fail(JstErrorKind::IndexOutOfRange);
                       Expected e;
                       e.after = m;
                       e.after.iters["it2"] = *n;
                       return e;
                     }});
    }
    out.push_back({make(Opcode::AddLast, {x}, {7}), [x, is_list](const Model& m) {
                     int start = pos(m, x);
                     if (!is_list && start == -1) return fail(JstErrorKind::IndexOutOfRange);
                     Expected e;
                     e.after = m;
                     int li = is_list ? list_index(m, x) : locate(m, start).first;
                     e.after.lists[li].push_back({7, e.after.next_id++});
                     return e;
                   }});
    out.push_back({make(Opcode::Remove, {x}), [x](const Model& m) {
                     int target = pos(m, x);
                     if (target == -1) return fail(JstErrorKind::IndexOutOfRange);
                     Expected e;
                     e.after = m;
                     unlink(e.after, target);
                     return e;
                   }});
  }
  out.push_back({make(Opcode::New, {"r"}), [](const Model& m) {
                   Expected e;
                   e.after = m;
                   e.ret = std::vector<std::int32_t>{};
                   return e;
                 }});
  return out;
}

std::string describe(const Model& m) {
  std::string s;
  for (std::size_t i = 0; i < m.lists.size(); ++i) {
    s += std::string(kListNames[i]) + "=[";
    for (std::size_t k = 0; k < m.lists[i].size(); ++k) {
      s += (k ? "," : "") + std::to_string(m.lists[i][k].value);
    }
    s += "] ";
  }
  for (const auto& [name, id] : m.iters) {
    auto [li, k] = locate(m, id);
    s += name + "@" + (id == -1 ? std::string("null") : std::to_string(k)) + " ";
  }
  return s;
}

// Empty when the heap result agrees with the oracle.
std::string compare(const Case& c, const Model& m, const heap::Heap& before) {
  Expected want = c.oracle(m);
  jst::OpResult got;
  try {
    got = jst::eval_op(c.op, before, jst::Env{});
  } catch (const jst::JstError& e) {
    if (want.error && want.error->kind == e.kind()) return {};
    return std::string("unexpected error ") + e.what();
  }
  if (want.error) return std::string("expected error ") + jst::to_string(want.error->kind);
  if (got.value != want.value) {
    return "value " + (got.value ? std::to_string(*got.value) : std::string("none")) + " vs " +
           (want.value ? std::to_string(*want.value) : std::string("none"));
  }
  const heap::Heap& h = got.heap;
  for (std::size_t i = 0; i < want.after.lists.size(); ++i) {
    if (jst::segment_values(h, kListNames[i], "null") != vals(want.after.lists[i])) {
      return std::string("list ") + kListNames[i] + " differs";
    }
  }
  for (const auto& [name, id] : want.after.iters) {
    if (!h.has(name)) return "iterator " + name + " unbound";
    if (jst::segment_values(h, name, "null") != rest_of(want.after, id)) {
      return "iterator " + name + " moved wrongly";
    }
  }
  if (want.ret) {
    if (!h.has("r")) return "result unbound";
    if (jst::segment_values(h, "r", "null") != *want.ret) return "result list differs";
  } else if (h.has("r")) {
    return "unexpected result list";
  }
  return {};
}

void all_lists(int max_len, std::int32_t lo, std::int32_t hi,
               std::vector<std::vector<std::int32_t>>& out) {
  out.push_back({});
  std::size_t begin = 0;
  for (int len = 1; len <= max_len; ++len) {
    std::size_t end = out.size();
    for (std::size_t i = begin; i < end; ++i) {
      if (static_cast<int>(out[i].size()) != len - 1) continue;
      for (std::int32_t v = lo; v <= hi; ++v) {
        auto next = out[i];
        next.push_back(v);
        out.push_back(std::move(next));
      }
    }
    begin = end;
  }
}

}  // namespace

OracleReport run_jst_oracle(int max_lists, int max_len, std::int32_t lo, std::int32_t hi) {
  OracleReport report;
  std::vector<std::vector<std::int32_t>> lists;
  all_lists(max_len, lo, hi, lists);
  std::set<std::string> covered;
  std::size_t variant = 0;

  auto run_model = [&](Model m) {
    ++report.heaps;
    heap::Heap before = build(m);
    for (const auto& c : cases_for(m, variant++)) {
      ++report.cases;
      covered.insert(jst::to_string(c.op.code));
      std::string why = compare(c, m, before);
      if (!why.empty()) {
        ++report.mismatches;
        if (report.samples.size() < 10) {
          report.samples.push_back(c.op.text() + " on " + describe(m) + ": " + why);
        }
      }
    }
  };

  std::vector<std::vector<std::vector<std::int32_t>>> heaps;
  heaps.push_back({});
  for (int n = 1; n <= max_lists; ++n) {
    std::vector<std::vector<std::vector<std::int32_t>>> grown;
    for (const auto& h : heaps) {
      if (static_cast<int>(h.size()) != n - 1) continue;
      for (const auto& l : lists) {
        auto g = h;
        g.push_back(l);
        grown.push_back(std::move(g));
      }
    }
    heaps.insert(heaps.end(), grown.begin(), grown.end());
  }
  for (const auto& h : heaps) {
    Model base;
    for (const auto& l : h) {
      std::vector<Cell> cells;
      for (auto v : l) cells.push_back({v, base.next_id++});
      base.lists.push_back(std::move(cells));
    }
    if (base.lists.empty()) {
      run_model(base);
      continue;
    }
    // The iterator walks every position of the first list, null included.
    for (std::size_t k = 0; k <= base.lists[0].size(); ++k) {
      Model m = base;
      m.iters["it"] = k < m.lists[0].size() ? m.lists[0][k].id : -1;
      run_model(m);
    }
  }
  report.opcodes_covered.assign(covered.begin(), covered.end());
  return report;
}

}  // namespace streamline::testing
