#include <doctest.h>

#include <random>
#include <set>

#include "corpus.hpp"
#include "streamline/cegis/enumerative.hpp"
#include "streamline/cegis/genetic.hpp"
#include "streamline/cegis/grammar.hpp"
#include "streamline/cegis/race.hpp"
#include "streamline/cegis/synthesize.hpp"
#include "streamline/frontend/lower.hpp"
#include "streamline/heap/interpreter.hpp"
#include "streamline/vcgen/candidate.hpp"

using namespace streamline;
using namespace streamline::cegis;

namespace {

SearchConfig quick() {
  SearchConfig cfg;
  cfg.bounds = heap::Bounds::range(3, -2, 2);
  cfg.ga_enabled = false;
  cfg.timeout_seconds = 120;
  return cfg;
}

// Counterexample of the filter-map example with the original's post-state.
vcgen::Counterexample cex_of(const ir::Program& p, std::vector<std::int32_t> list) {
  vcgen::Counterexample cex;
  cex.pre.heap.bind("list", cex.pre.heap.make_list(list));
  cex.expected = heap::run(p, cex.pre);
  return cex;
}

}  // namespace

TEST_SUITE("cegis") {
  TEST_CASE("configuration is validated") {
    SearchConfig cfg;
    CHECK_NOTHROW(cfg.validate());
    cfg.ga_replacement_rate = 1.5;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg = SearchConfig{};
    cfg.ga_population = 1;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg = SearchConfig{};
    cfg.timeout_seconds = -1;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  }

  TEST_CASE("the grammar holds no two lambdas with the same behaviour") {
    auto p = testing::compile_corpus("filter_map");
    Grammar g(p, SearchConfig{});
    std::set<std::vector<bool>> tables;
    for (const auto& pred : g.predicates()) {
      std::vector<bool> t;
      for (std::int32_t v = kProbeLo; v <= kProbeHi; ++v) t.push_back(pred.eval(v));
      CHECK(tables.insert(t).second);
    }
    std::set<std::pair<std::int32_t, std::int32_t>> maps;
    for (const auto& m : g.mappers()) CHECK(maps.insert({m.scale, m.offset}).second);
    CHECK(g.predicates().size() > 10);
    REQUIRE(g.constants().size() >= 3);
    CHECK(g.constants()[0] == 0);
    CHECK(g.constants()[1] == 1);
    CHECK(g.constants()[2] == -1);
    CHECK(g.lists() == std::vector<std::string>{"list"});
  }

  TEST_CASE("compositions and replacement counts") {
    CHECK(compositions(2, 2) == std::vector<std::vector<int>>{{2, 0}, {1, 1}, {0, 2}});
    CHECK(compositions(3, 1) == std::vector<std::vector<int>>{{3}});
    CHECK(compositions(1, 3).size() == 3);
    CHECK(replacement_count(2, 0.15) == 1);
    CHECK(replacement_count(2000, 0.15) == 300);
    CHECK(replacement_count(10, 0.0) == 1);
  }

  TEST_CASE("counterexample sets reject equivalent states") {
    auto p = testing::compile_corpus("filter_map");
    CexSet set(p);
    CHECK(set.add(cex_of(p, {1, -1})));
    CHECK_FALSE(set.add(cex_of(p, {1, -1})));
    CHECK(set.add(cex_of(p, {-1, 1})));
    CHECK(set.size() == 2);
    CHECK(set.expected()[0][0].list == std::vector<std::int32_t>{2});
    auto good = vcgen::parse_candidate(p, "list.stream().filter(v -> v > 0).map(v -> 2*v) => newList");
    auto bad = vcgen::parse_candidate(p, "list.stream().map(v -> 2*v) => newList");
    CHECK(consistent(p, good, set));
    CHECK(matched(p, bad, set) == 0);
  }

  TEST_CASE("the enumerator returns the first consistent pipeline") {
    auto p = testing::compile_corpus("filter_map");
    Grammar g(p, SearchConfig{});
    CexSet set(p);
    set.add(cex_of(p, {1}));
    set.add(cex_of(p, {-3}));
    CHECK(search_enumerative(p, g, set, 1).status == SearchStatus::Exhausted);
    auto two = search_enumerative(p, g, set, 2);
    REQUIRE(two.status == SearchStatus::Found);
    CHECK(consistent(p, *two.candidate, set));
    CHECK(two.candidate->length() == 2);
  }

  TEST_CASE("genomes decode to well-typed candidates of the requested length") {
    auto p = testing::compile_corpus("sum_skip");
    SearchConfig cfg;
    Grammar g(p, cfg);
    std::mt19937_64 rng(1);
    for (int length = 1; length <= 3; ++length) {
      GeneticSearch ga(p, g, cfg, length);
      for (int i = 0; i < 200; ++i) {
        auto c = ga.decode(ga.random_genome(rng));
        CHECK_NOTHROW(vcgen::check_shape(p, c));
        CHECK(c.length() == length);
      }
    }
  }

  TEST_CASE("an enumerative result displaces a genetic one from the same quantum") {
    vcgen::Candidate a;
    vcgen::Candidate b;
    b.post["x"] = jst::Pipeline{};
    ResultCell tie([] { return std::uint64_t{5}; });
    CHECK(tie.post(Strategy::Genetic, a));
    CHECK(tie.post(Strategy::Enumerative, b));
    CHECK(tie.result()->first == Strategy::Enumerative);
    CHECK_FALSE(tie.post(Strategy::Genetic, a));

    std::uint64_t t = 0;
    ResultCell later([&] { return t; });
    CHECK(later.post(Strategy::Genetic, a));
    t = 1;
    CHECK_FALSE(later.post(Strategy::Enumerative, b));
    CHECK(later.result()->first == Strategy::Genetic);
  }

  TEST_CASE("synthesis finds the filter-map pipeline and is deterministic without the GA") {
    auto p = testing::compile_corpus("filter_map");
    std::vector<std::string> phases;
    auto first = synthesize(p, quick(), [&](const IterationLog& e) { phases.push_back(e.phase); });
    REQUIRE(first.candidate);
    CHECK(first.length == 2);
    CHECK(vcgen::candidate_text(p, *first.candidate) ==
          "list.stream().filter(v -> v > 0).map(v -> 2*v) => newList\n");
    REQUIRE_FALSE(phases.empty());
    CHECK(phases.front() == "seed");
    CHECK(phases.back() == "pass");
    CHECK(first.rejected.size() == first.counterexamples.size());

    auto second = synthesize(p, quick());
    REQUIRE(second.candidate);
    CHECK(vcgen::candidate_text(p, *second.candidate) == vcgen::candidate_text(p, *first.candidate));
    CHECK(second.counterexamples.size() == first.counterexamples.size());
  }

  TEST_CASE("every refuted candidate is inconsistent with the final counterexamples") {
    auto p = testing::compile_corpus("remove_negatives");
    auto r = synthesize(p, quick());
    REQUIRE(r.candidate);
    CexSet set(p);
    for (const auto& c : r.counterexamples) set.add(c);
    CHECK(set.size() == r.counterexamples.size());
    for (const auto& c : r.rejected) CHECK_FALSE(consistent(p, c, set));
    CHECK(consistent(p, *r.candidate, set));
  }

  TEST_CASE("failures are classified") {
    auto p = testing::compile_corpus("filter_map");
    SearchConfig cfg = quick();
    cfg.timeout_seconds = 0;
    auto timeout = synthesize(p, cfg);
    CHECK_FALSE(timeout.candidate);
    CHECK(timeout.failure == Failure::Timeout);

    auto oob = frontend::compile(testing::read_text(testing::source_dir() / "tests/data/oob.minij"));
    auto fault = synthesize(oob, quick());
    CHECK(fault.failure == Failure::NotRefactorable);

    cfg = quick();
    cfg.max_pipeline_len = 1;
    auto short_grammar = synthesize(p, cfg);
    CHECK(short_grammar.failure == Failure::InstructionSetExhausted);
  }
}
