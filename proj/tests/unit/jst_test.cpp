#include <doctest.h>

#include <random>

#include "jst_oracle.hpp"
#include "streamline/jst/eval.hpp"
#include "streamline/jst/pipeline.hpp"
#include "streamline/jst/text.hpp"

using namespace streamline;
using namespace streamline::jst;

namespace {

Pipeline parse(std::string_view text) { return parse_pipeline_line(std::string(text) + " => r").pipeline; }

ValueInputs inputs(std::vector<std::int32_t> l, std::vector<std::int32_t> p, std::int32_t n) {
  ValueInputs in;
  in.list_names = {"l", "p"};
  in.lists = {std::move(l), std::move(p)};
  in.scalar_names = {"n"};
  in.scalars = {n};
  return in;
}

heap::Heap heap_of(const ValueInputs& in) {
  heap::Heap h;
  for (std::size_t i = 0; i < in.list_names.size(); ++i) h.bind(in.list_names[i], h.make_list(in.lists[i]));
  return h;
}

Env env_of(const ValueInputs& in) {
  Env env;
  for (std::size_t i = 0; i < in.scalar_names.size(); ++i) env.scalars[in.scalar_names[i]] = in.scalars[i];
  return env;
}

Predicate random_pred(std::mt19937& rng) {
  Predicate p;
  int atoms = std::uniform_int_distribution<int>(0, 2)(rng);
  for (int i = 0; i < atoms; ++i) {
    Atom a;
    a.op = static_cast<CmpOp>(std::uniform_int_distribution<int>(0, 5)(rng));
    a.constant = std::uniform_int_distribution<int>(-2, 2)(rng);
    if (std::uniform_int_distribution<int>(0, 3)(rng) == 0) {
      a.modulus = 2;
      a.constant = std::uniform_int_distribution<int>(-1, 1)(rng);
    }
    p.atoms.push_back(a);
  }
  return p;
}

Count random_count(std::mt19937& rng) {
  switch (std::uniform_int_distribution<int>(0, 2)(rng)) {
    case 0: return Count::literal(std::uniform_int_distribution<int>(0, 3)(rng));
    case 1: return Count::size_of("p");
    default: return Count::scalar("n");
  }
}

Pipeline random_pipeline(std::mt19937& rng) {
  Pipeline p;
  p.source = "l";
  int stages = std::uniform_int_distribution<int>(0, 3)(rng);
  for (int i = 0; i < stages; ++i) {
    Stage s;
    s.kind = static_cast<StageKind>(std::uniform_int_distribution<int>(0, 6)(rng));
    s.pred = random_pred(rng);
    s.mapper = {std::uniform_int_distribution<int>(-2, 2)(rng), std::uniform_int_distribution<int>(-1, 1)(rng)};
    s.count = random_count(rng);
    s.value = std::uniform_int_distribution<int>(-2, 2)(rng);
    s.other = "p";
    if (s.kind != StageKind::Filter) s.pred = {};
    if (s.kind != StageKind::Map) s.mapper = {};
    if (s.kind != StageKind::Skip && s.kind != StageKind::Limit) s.count = {};
    if (s.kind != StageKind::Append) s.value = 0;
    if (s.kind != StageKind::Concat) s.other.clear();
    p.stages.push_back(s);
  }
  if (std::uniform_int_distribution<int>(0, 1)(rng) == 1) {
    Terminal t;
    t.kind = static_cast<TerminalKind>(std::uniform_int_distribution<int>(0, 5)(rng));
    if (t.boolean()) t.pred = random_pred(rng);
    if (t.kind == TerminalKind::Reduce) {
      t.acc.kind = static_cast<AccumulatorKind>(std::uniform_int_distribution<int>(0, 3)(rng));
      t.identity = t.acc.kind == AccumulatorKind::Product ? 1 : 0;
    }
    p.terminal = t;
  }
  return p;
}

std::vector<std::int32_t> random_list(std::mt19937& rng) {
  std::vector<std::int32_t> v(std::uniform_int_distribution<int>(0, 4)(rng));
  for (auto& x : v) x = std::uniform_int_distribution<int>(-3, 3)(rng);
  return v;
}

// Result of a term run on the heap model, as values.
Value run_term(const PipelineTerm& term, const heap::Heap& h, const Env& env, const ValueInputs& in) {
  if (term.ops.empty()) return Value{in.list(term.source), 0};
  PipelineValue pv = eval_pipeline(term, h, env);
  Value v;
  if (pv.scalar) {
    v.scalar = *pv.scalar;
  } else {
    v.list = pv.heap.values_of(pv.list);
  }
  return v;
}

}  // namespace

TEST_SUITE("jst") {
  TEST_CASE("every operation agrees with the array reference model") {
    auto report = testing::run_jst_oracle(2, 3, -2, 2);
    std::string first = report.samples.empty() ? std::string() : report.samples.front();
    INFO(first);
    CHECK(report.mismatches == 0);
    CHECK(report.cases > 100000);
    CHECK(report.opcodes_covered.size() == std::size(kAllOpcodes));
  }

  TEST_CASE("worked examples") {
    auto in = inputs({1, -2, 3, -4}, {}, 0);
    CHECK(evaluate(parse("l.stream().filter(v -> v > 0)"), in).list == std::vector<std::int32_t>{1, 3});
    CHECK(evaluate(parse("l.stream().map(v -> 2 * v)"), in).list == std::vector<std::int32_t>{2, -4, 6, -8});

    auto sum = inputs({1, 2, 3}, {}, 0);
    CHECK(evaluate(parse("l.stream().reduce(0, Integer::sum)"), sum).scalar == 6);
    CHECK(evaluate(parse("l.stream().reduce(1, (a, b) -> a * b)"), sum).scalar == 6);

    auto sorted = inputs({3, -1, 2, -1}, {}, 0);
    CHECK(evaluate(parse("l.stream().sorted()"), sorted).list == std::vector<std::int32_t>{-1, -1, 2, 3});

    auto skip = inputs({5, 6, 7, 8}, {}, 3);
    CHECK(evaluate(parse("l.stream().skip(n)"), skip).list == std::vector<std::int32_t>{8});
    CHECK(evaluate(parse("l.stream().limit(n)"), skip).list == std::vector<std::int32_t>{5, 6, 7});
    CHECK(evaluate(parse("l.stream().skip(9)"), skip).list.empty());

    auto empty = inputs({}, {}, 0);
    CHECK(evaluate(parse("l.stream().min()"), empty).scalar == INT32_MAX);
    CHECK(evaluate(parse("l.stream().max()"), empty).scalar == INT32_MIN);
    CHECK(evaluate(parse("l.stream().allMatch(v -> v > 0)"), empty).scalar == 1);
    CHECK(evaluate(parse("l.stream().anyMatch(v -> v > 0)"), empty).scalar == 0);
  }

  TEST_CASE("negative counts are rejected") {
    auto in = inputs({1}, {}, -1);
    CHECK_THROWS_AS(evaluate(parse("l.stream().skip(n)"), in), JstError);
  }

  TEST_CASE("pipeline text round trips") {
    const char* lines[] = {
        "l.stream().filter(v -> v > 0).map(v -> 2 * v) => r",
        "l.stream().filter(v -> v % 2 == 0 && v != 1).count() => c",
        "l.stream().skip(p.size()).limit(n) => r",
        "l.stream().sorted().concat(p).append(-2) => r",
        "l.stream().map(v -> -v + 1).reduce(0, Integer::max) => m",
        "l.stream().reduce(1, (a, b) -> a * b) => m",
        "l.stream().anyMatch(v -> v <= -1) => b",
        "l[..it).stream().map(v -> 3 * v - 2) => r",
        "unchanged => l",
        "[] => r",
        "0 => s",
    };
    for (const char* text : lines) {
      auto first = parse_pipeline_line(text);
      auto again = parse_pipeline_line(first.pipeline.text() + " => " + first.target);
      CHECK_MESSAGE(again.pipeline == first.pipeline, text);
    }
    CHECK_THROWS_AS(parse_pipeline_line("l.stream().count().map(v -> v) => r"), PipelineSyntaxError);
    CHECK_THROWS_AS(parse_pipeline_line("l.stream().frobnicate() => r"), PipelineSyntaxError);
    CHECK_THROWS_AS(parse_pipeline_line("l.stream().filter(w -> v > 0) => r"), PipelineSyntaxError);
  }

  TEST_CASE("the value evaluator matches the heap term semantics") {
    std::mt19937 rng(17);
    int checked = 0;
    for (int i = 0; i < 5000; ++i) {
      Pipeline p = random_pipeline(rng);
      auto in = inputs(random_list(rng), random_list(rng), std::uniform_int_distribution<int>(0, 2)(rng));
      heap::Heap h = heap_of(in);
      Env env = env_of(in);
      Value fast = evaluate(p, in);
      Value slow = run_term(to_term(p), h, env, in);
      CHECK_MESSAGE(fast == slow, p.text());

      // The prefix before an iterator position, through the cut term.
      std::size_t k = std::uniform_int_distribution<std::size_t>(0, in.lists[0].size())(rng);
      heap::NodeId pos = h.position(h.ref("l"));
      for (std::size_t j = 0; j < k; ++j) pos = h.at(pos).next;
      h.bind("it", pos);
      Value prefix = evaluate(p, in, k);
      PipelineTerm cut = to_term(p);
      if (!cut.ops.empty()) {
        cut = cut_at_iterator(cut, "it");
        CHECK_MESSAGE(prefix == run_term(cut, h, env, in), p.text() << " prefix " << k);
      }
      ++checked;
    }
    CHECK(checked == 5000);
  }

  TEST_CASE("operations never change their input heap") {
    heap::Heap h;
    h.bind("l", h.make_list(std::vector<std::int32_t>{1, 2, 3}));
    heap::Heap before = h;
    auto term = to_term(parse("l.stream().filter(v -> v > 1).map(v -> 2 * v).sorted()"));
    auto out = eval_pipeline(term, h, Env{});
    CHECK(out.heap.values_of("l") == std::vector<std::int32_t>{1, 2, 3});
    CHECK(out.heap.values_of(out.list) == std::vector<std::int32_t>{4, 6});
    CHECK(h.values_of("l") == before.values_of("l"));
  }

  TEST_CASE("ill-formed operands are reported") {
    heap::Heap h;
    h.bind("l", h.make_list(std::vector<std::int32_t>{1}));
    JstOp get;
    get.code = Opcode::Get;
    get.refs = {"l"};
    get.ints = {IntArg(5)};
    get.result = "x";
    try {
      eval_op(get, h, Env{});
      FAIL("expected an error");
    } catch (const JstError& e) {
      CHECK(e.kind() == JstErrorKind::IndexOutOfRange);
    }
    JstOp missing = get;
    missing.refs = {"q"};
    missing.ints = {IntArg(0)};
    try {
      eval_op(missing, h, Env{});
      FAIL("expected an error");
    } catch (const JstError& e) {
      CHECK(e.kind() == JstErrorKind::MissingBinding);
    }
    JstOp arity = get;
    arity.ints.clear();
    CHECK_THROWS_AS(validate(arity), JstError);
  }
}
