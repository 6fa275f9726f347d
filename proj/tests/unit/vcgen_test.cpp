#include <doctest.h>

#include "corpus.hpp"
#include "streamline/frontend/lower.hpp"
#include "streamline/heap/enumerate.hpp"
#include "streamline/heap/interpreter.hpp"
#include "streamline/vcgen/candidate.hpp"
#include "streamline/vcgen/counterexample.hpp"
#include "streamline/vcgen/vc.hpp"
#include "streamline/vcgen/verify.hpp"

using namespace streamline;
using namespace streamline::vcgen;

namespace {

VerifyOptions small(int max_len = 3) {
  VerifyOptions o;
  o.bounds = heap::Bounds::range(max_len, -2, 2);
  return o;
}

}  // namespace

TEST_SUITE("vcgen") {
  TEST_CASE("candidates must fit the outputs") {
    auto p = testing::compile_corpus("filter_map");
    CHECK_NOTHROW(parse_candidate(p, "list.stream().filter(v -> v > 0) => newList"));
    CHECK_THROWS_AS(parse_candidate(p, "list.stream().count() => newList"), ShapeMismatch);
    CHECK_THROWS_AS(parse_candidate(p, "q.stream() => newList"), ShapeMismatch);
    CHECK_THROWS_AS(parse_candidate(p, "list.stream() => other"), std::exception);

    auto s = testing::compile_corpus("sum_skip");
    CHECK_THROWS_AS(parse_candidate(s, "p.stream().skip(l.size()) => p"), std::exception);
    CHECK_THROWS_AS(parse_candidate(s, "l.stream().filter(v -> v > 0) => sum\nunchanged => p"), ShapeMismatch);
  }

  TEST_CASE("one condition triple per loop") {
    auto p = testing::compile_corpus("filter_map");
    auto c = parse_candidate(p, "list.stream().filter(v -> v > 0).map(v -> 2*v) => newList");
    auto vcs = make_vcs(p, c);
    REQUIRE(vcs.size() == 3);
    CHECK(vcs[0].label() == "Base(L0)");
    CHECK(vcs[1].label() == "Inductive(L0)");
    CHECK(vcs[2].label() == "Exit(L0)");

    auto flat = frontend::compile("int f(List<Integer> l) { return l.size(); }");
    auto fc = parse_candidate(flat, "l.stream().count() => return");
    auto one = make_vcs(flat, fc);
    REQUIRE(one.size() == 1);
    CHECK(one[0].label() == "Exit");
    CHECK(verify(flat, fc, Mode::Equivalence, small()).outcome == Outcome::Pass);
  }

  TEST_CASE("a correct candidate passes in both modes") {
    auto p = testing::compile_corpus("filter_map");
    auto c = parse_candidate(p, "list.stream().filter(v -> v > 0).map(v -> 2*v) => newList");
    auto eq = verify(p, c, Mode::Equivalence, small());
    CHECK(eq.outcome == Outcome::Pass);
    CHECK(eq.checked == heap::StateSpace(heap::param_specs(p), small().bounds).base_size());
    CHECK(verify(p, c, Mode::Invariants, small()).outcome == Outcome::Pass);

    auto r = testing::compile_corpus("remove_negatives");
    auto rc = parse_candidate(r, "l.stream().filter(v -> v >= 0) => l");
    CHECK(verify(r, rc, Mode::Equivalence, small()).outcome == Outcome::Pass);
    CHECK(verify(r, rc, Mode::Invariants, small()).outcome == Outcome::Pass);
  }

  TEST_CASE("a wrong candidate yields a counterexample that separates the programs") {
    auto p = testing::compile_corpus("filter_map");
    auto c = parse_candidate(p, "list.stream().map(v -> 2*v) => newList");
    auto v = verify(p, c, Mode::Equivalence, small());
    REQUIRE(v.outcome == Outcome::Fail);
    REQUIRE(v.cex);
    auto in = inputs_of(p, v.cex->pre);
    auto original = observed_outputs(p, heap::run(p, v.cex->pre));
    CHECK(original != candidate_outputs(p, c, in));
    bool has_non_positive = false;
    for (auto x : in.list("list")) has_non_positive = has_non_positive || x <= 0;
    CHECK(has_non_positive);

    auto inv = verify(p, c, Mode::Invariants, small());
    CHECK(inv.outcome == Outcome::Fail);
  }

  TEST_CASE("dropping the side effect on the second list is caught") {
    auto p = testing::compile_corpus("sum_skip");
    auto c = parse_candidate(p, "l.stream().reduce(0, Integer::sum) => sum\nunchanged => p");
    auto v = verify(p, c, Mode::Equivalence, small(2));
    REQUIRE(v.outcome == Outcome::Fail);
    CHECK_FALSE(inputs_of(p, v.cex->pre).list("p").empty());
    CHECK_FALSE(inputs_of(p, v.cex->pre).list("l").empty());

    auto good = parse_candidate(p, "l.stream().reduce(0, Integer::sum) => sum\np.stream().skip(l.size()) => p");
    CHECK(verify(p, good, Mode::Equivalence, small(2)).outcome == Outcome::Pass);
    CHECK(verify(p, good, Mode::Invariants, small(2)).outcome == Outcome::Pass);
  }

  TEST_CASE("a faulting original is not refactorable") {
    auto p = frontend::compile(testing::read_text(testing::source_dir() / "tests/data/oob.minij"));
    auto c = parse_candidate(p, "0 => return");
    auto v = verify(p, c, Mode::Equivalence, small());
    CHECK(v.outcome == Outcome::NotRefactorable);
    CHECK(v.fault == heap::Fault::IndexOutOfBounds);
  }

  TEST_CASE("equivalent states share a key") {
    heap::ProgramState a;
    a.heap.make_node(9, heap::kNull);
    a.heap.bind("l", a.heap.make_list(std::vector<std::int32_t>{1, 2}));
    heap::ProgramState b;
    b.heap.bind("l", b.heap.make_list(std::vector<std::int32_t>{1, 2}));
    CHECK(state_key(a) == state_key(b));
    b.heap.bind("l", b.heap.make_list(std::vector<std::int32_t>{2, 1}));
    CHECK(state_key(a) != state_key(b));
  }

  TEST_CASE("the candidate post-state compares equal to the original's") {
    auto p = testing::compile_corpus("remove_negatives");
    auto c = parse_candidate(p, "l.stream().filter(v -> v >= 0) => l");
    heap::StateSpace space(heap::param_specs(p), small(2).bounds);
    for (std::uint64_t i = 0; i < space.size(); ++i) {
      auto pre = space.at(i);
      auto post = heap::run(p, pre);
      CHECK(heap::state_equiv(post, apply_candidate(p, c, pre), equiv_spec(p, pre)));
      CHECK(outputs_match(p, c, pre, post));
    }
  }
}
