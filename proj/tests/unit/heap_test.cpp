#include <doctest.h>

#include <map>
#include <random>

#include "corpus.hpp"
#include "heap_gen.hpp"
#include "streamline/frontend/lower.hpp"
#include "streamline/heap/enumerate.hpp"
#include "streamline/heap/equivalence.hpp"
#include "streamline/heap/interpreter.hpp"
#include "streamline/heap/snapshot.hpp"
#include "streamline/vcgen/verify.hpp"

using namespace streamline;
using heap::Heap;
using heap::kNull;
using heap::NodeId;
using testing::permuted;

namespace {

const std::vector<std::string> kRefs = {"x", "y", "z"};

// Reference canonical form: nodes numbered in first-visit order walking
// from each reference in turn.
std::vector<std::int64_t> canonical(const Heap& h, const std::vector<std::string>& refs) {
  std::map<NodeId, std::int64_t> ids;
  std::vector<std::int64_t> out;
  for (const auto& r : refs) {
    auto id = h.lookup(r);
    if (!id) {
      out.push_back(-2);
      continue;
    }
    NodeId n = *id;
    out.push_back(n == kNull ? -1 : (ids.contains(n) ? ids[n] : static_cast<std::int64_t>(ids.size())));
    while (n != kNull && !ids.contains(n)) {
      ids[n] = static_cast<std::int64_t>(ids.size());
      const auto& node = h.at(n);
      out.push_back(node.header ? 1000 : node.value);
      NodeId next = node.next;
      out.push_back(next == kNull ? -1 : (ids.contains(next) ? ids[next] : static_cast<std::int64_t>(ids.size())));
      n = next;
    }
  }
  return out;
}

Heap list_heap(const std::vector<std::int32_t>& v) {
  Heap h;
  h.bind("x", h.make_list(v));
  return h;
}

}  // namespace

TEST_SUITE("heap") {
  TEST_CASE("heap equivalence agrees with a canonical-form oracle on random pairs") {
    std::mt19937 rng(7);
    int equal_pairs = 0;
    for (int i = 0; i < 10000; ++i) {
      Heap a = testing::random_heap(rng, kRefs);
      Heap b = (i % 2 == 0) ? permuted(a, rng) : testing::random_heap(rng, kRefs);
      bool want = canonical(a, kRefs) == canonical(b, kRefs);
      equal_pairs += want;
      CHECK(heap::heap_equiv(a, b, kRefs) == want);
    }
    CHECK(equal_pairs >= 5000);
  }

  TEST_CASE("heap equivalence is an equivalence relation") {
    std::mt19937 rng(11);
    int violations = 0;
    for (int i = 0; i < 10000; ++i) {
      Heap a = testing::random_heap(rng, kRefs);
      Heap b = (i % 3 == 0) ? testing::random_heap(rng, kRefs) : permuted(a, rng);
      Heap c = (i % 5 == 0) ? testing::random_heap(rng, kRefs) : permuted(b, rng);
      bool ab = heap::heap_equiv(a, b, kRefs);
      bool ba = heap::heap_equiv(b, a, kRefs);
      bool bc = heap::heap_equiv(b, c, kRefs);
      bool ac = heap::heap_equiv(a, c, kRefs);
      violations += !heap::heap_equiv(a, a, kRefs);
      violations += ab != ba;
      violations += ab && bc && !ac;
    }
    CHECK(violations == 0);
  }

  TEST_CASE("equivalence on a single list root is equality of the value sequences") {
    std::mt19937 rng(3);
    int violations = 0;
    int equal = 0;
    for (int i = 0; i < 10000; ++i) {
      auto draw = [&] {
        std::vector<std::int32_t> v(std::uniform_int_distribution<int>(0, 3)(rng));
        for (auto& x : v) x = std::uniform_int_distribution<int>(0, 1)(rng);
        return v;
      };
      auto u = draw();
      auto w = draw();
      equal += u == w;
      Heap a = list_heap(u);
      Heap b = permuted(list_heap(w), rng);
      violations += heap::heap_equiv(a, b, std::vector<std::string>{"x"}) != (u == w);
    }
    CHECK(violations == 0);
    CHECK(equal > 500);
  }

  TEST_CASE("the shape shortcut used by verification matches heap equivalence") {
    std::mt19937 rng(5);
    heap::EquivSpec spec{{"x", "y", "x@alias"}, {}};
    int agree = 0;
    for (int i = 0; i < 10000; ++i) {
      // Original heaps: lists whose chains may share nodes or carry stray
      // headers; the candidate heap has private chains with the same values.
      Heap orig;
      std::vector<std::int32_t> xs(std::uniform_int_distribution<int>(0, 3)(rng), 1);
      std::vector<std::int32_t> ys(std::uniform_int_distribution<int>(0, 3)(rng), 2);
      NodeId x = orig.make_list(xs);
      NodeId y = orig.make_list(ys);
      int mode = std::uniform_int_distribution<int>(0, 4)(rng);
      if (mode == 1 && !xs.empty()) {
        // y's last element continues into x's chain
        NodeId last = y;
        while (orig.at(last).next != kNull) last = orig.at(last).next;
        orig.at(last).next = orig.at(x).next;
      }
      orig.bind("x", x);
      orig.bind("y", mode == 2 ? x : y);
      orig.bind("x@alias", mode == 3 ? y : x);
      if (mode == 4 && !xs.empty()) orig.at(orig.at(x).next).header = true;

      std::vector<std::int32_t> got_x = orig.values(orig.ref("x"));
      std::vector<std::int32_t> got_y = orig.values(orig.ref("y"));
      Heap cand;
      NodeId cx = cand.make_list(got_x);
      cand.bind("x", cx);
      cand.bind("y", cand.make_list(got_y));
      cand.bind("x@alias", cx);
      bool equiv = heap::heap_equiv(orig, cand, spec.refs);
      agree += equiv == vcgen::canonical_shape(orig, spec);
    }
    CHECK(agree == 10000);
  }

  TEST_CASE("state space size and ordering") {
    std::vector<heap::ParamSpec> one = {{"l", true}};
    heap::StateSpace s(one, heap::Bounds{});
    CHECK(s.base_size() == 2801);  // 1 + 7 + 49 + 343 + 2401
    CHECK(s.size() == 5602);
    CHECK(s.at(0).heap.values_of("l").empty());
    CHECK_FALSE(s.at(0).heap.has(heap::shadow_name("l")));
    CHECK(s.at(1).heap.has(heap::shadow_name("l")));
    CHECK(s.at(1).heap.ref(heap::shadow_name("l")) == s.at(1).heap.ref("l"));
    CHECK(s.at(2).heap.values_of("l") == std::vector<std::int32_t>{-3});

    std::vector<heap::ParamSpec> two = {{"l", true}, {"p", true}};
    heap::StateSpace t(two, heap::Bounds{});
    CHECK(t.base_size() == 2801ULL * 2801ULL);

    std::vector<heap::ParamSpec> scalar = {{"l", true}, {"n", false}};
    heap::StateSpace u(scalar, heap::Bounds::range(2, -1, 1, false));
    CHECK(u.size() == 13ULL * 3ULL);
    CHECK_FALSE(u.aliased_variants());
  }

  TEST_CASE("constructor sequences rebuild the pre-state") {
    std::vector<heap::ParamSpec> params = {{"l", true}, {"p", true}, {"n", false}};
    heap::StateSpace s(params, heap::Bounds::range(2, -1, 1));
    for (std::uint64_t i = 0; i < s.size(); i += 7) {
      auto state = s.at(i);
      auto steps = heap::constructors(state, params);
      auto back = heap::from_constructors(steps);
      CHECK(heap::state_snapshot(back) == heap::state_snapshot(state));
    }
  }

  TEST_CASE("iterators are fail-fast and fuel bounds the run") {
    auto cme = frontend::compile(
        "void f(List<Integer> l) { Iterator<Integer> it = l.iterator();"
        " while (it.hasNext()) { int x = it.next(); l.add(x); } }");
    heap::ProgramState s;
    s.heap.bind("l", s.heap.make_list(std::vector<std::int32_t>{1}));
    auto post = heap::run(cme, s);
    CHECK(post.status == heap::Status::Exception);
    CHECK(post.fault == heap::Fault::ConcurrentModification);

    auto spin = frontend::compile("int f(List<Integer> l) { int i = 0; while (i >= 0) { i = 1; } return i; }");
    CHECK(heap::run(spin, s, 100).status == heap::Status::OutOfFuel);

    auto div = frontend::compile("int f(List<Integer> l) { return 1 / l.size(); }");
    heap::ProgramState empty;
    empty.heap.bind("l", empty.heap.make_list());
    auto faulted = heap::run(div, empty);
    CHECK(faulted.fault == heap::Fault::Arithmetic);

    auto twice = frontend::compile(
        "void f(List<Integer> l) { Iterator<Integer> it = l.iterator(); it.next(); it.remove(); it.remove(); }");
    auto ise = heap::run(twice, s);
    CHECK(ise.fault == heap::Fault::IllegalState);
  }

  TEST_CASE("int arithmetic wraps") {
    auto p = frontend::compile("int f(List<Integer> l) { int m = Integer.MAX_VALUE; return m + 1; }");
    heap::ProgramState s;
    s.heap.bind("l", s.heap.make_list());
    auto post = heap::run(p, s);
    CHECK(post.scalar("return") == INT32_MIN);
  }
}
