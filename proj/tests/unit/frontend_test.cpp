#include <doctest.h>

#include <filesystem>

#include "corpus.hpp"
#include "streamline/frontend/lexer.hpp"
#include "streamline/frontend/lower.hpp"
#include "streamline/frontend/parser.hpp"
#include "streamline/frontend/printer.hpp"
#include "streamline/heap/interpreter.hpp"

using namespace streamline;
using streamline::testing::compile_corpus;
using streamline::testing::read_text;

TEST_SUITE("frontend") {
  TEST_CASE("every corpus file parses, prints and parses back to the same tree") {
    int files = 0;
    for (const auto& entry : std::filesystem::directory_iterator(testing::source_dir() / "corpus")) {
      if (entry.path().extension() != ".minij") continue;
      ++files;
      CAPTURE(entry.path().filename().string());
      auto ast = frontend::parse(read_text(entry.path()));
      auto again = frontend::parse(frontend::print_program(ast));
      CHECK(frontend::equal(ast, again));
      CHECK_NOTHROW(frontend::lower(ast));
    }
    CHECK(files == 13);
  }

  TEST_CASE("outputs are classified by how the method affects the caller") {
    auto removal = compile_corpus("remove_negatives");
    REQUIRE(removal.outputs.size() == 1);
    CHECK(removal.outputs[0].kind == ir::OutputKind::InPlaceList);
    CHECK(removal.outputs[0].name == "l");

    auto filter_map = compile_corpus("filter_map");
    REQUIRE(filter_map.outputs.size() == 1);
    CHECK(filter_map.outputs[0].kind == ir::OutputKind::FreshList);
    CHECK(filter_map.outputs[0].name == "return");
    CHECK(filter_map.outputs[0].display == "newList");

    auto sum = compile_corpus("sum_skip");
    REQUIRE(sum.outputs.size() == 2);
    CHECK(sum.outputs[0].kind == ir::OutputKind::InPlaceList);
    CHECK(sum.outputs[0].name == "p");
    CHECK(sum.outputs[1].kind == ir::OutputKind::Int);
    CHECK(sum.outputs[1].display == "sum");

    auto all = compile_corpus("all_match");
    REQUIRE(all.outputs.size() == 1);
    CHECK(all.outputs[0].kind == ir::OutputKind::Boolean);
  }

  TEST_CASE("loops record their traversals and invariant names") {
    auto sort = compile_corpus("selection_sort");
    REQUIRE(sort.loops.size() == 2);
    CHECK(sort.loops[0].parent == -1);
    CHECK(sort.loops[1].parent == 0);
    CHECK(sort.loops[0].invariant != sort.loops[1].invariant);
    auto filter_map = compile_corpus("filter_map");
    REQUIRE(filter_map.loops.size() == 1);
    REQUIRE(filter_map.loops[0].traversals.size() == 1);
    CHECK(filter_map.loops[0].traversals[0].kind == ir::Traversal::Kind::Iterator);
  }

  TEST_CASE("enhanced for is lowered to an iterator loop") {
    auto p = compile_corpus("find_first_positive");
    REQUIRE(p.loops.size() == 1);
    REQUIRE(p.loops[0].traversals.size() == 1);
    CHECK(p.loops[0].traversals[0].kind == ir::Traversal::Kind::Iterator);
    CHECK(p.listing().find("iterator(data)") != std::string::npos);
  }

  TEST_CASE("the lexer reports string literals as unsupported tokens") {
    auto toks = frontend::tokenize("int x = \"s\";");
    bool unsupported = false;
    for (const auto& t : toks) unsupported = unsupported || t.kind == frontend::TokenKind::Unsupported;
    CHECK(unsupported);
    CHECK(toks.back().kind == frontend::TokenKind::End);
  }

  TEST_CASE("diagnostics carry their kind and position") {
    try {
      frontend::compile("int f(List<Integer> l) { return l.size() }");
      FAIL("expected a syntax error");
    } catch (const frontend::SyntaxError& e) {
      CHECK(e.position().line == 1);
      CHECK(e.kind() == frontend::ErrorKind::Syntax);
    }
    CHECK_THROWS_AS(frontend::compile("int f(List<Integer> l) { String s = null; return 0; }"),
                    frontend::UnsupportedConstruct);
    CHECK_THROWS_AS(frontend::compile("int f(List<Integer> l) { return y; }"),
                    frontend::BindingError);
    CHECK_THROWS_AS(frontend::compile("int f(List<Integer> l) { int x = true; return x; }"),
                    frontend::TypeError);
    CHECK_THROWS_AS(frontend::compile("int f(int[] a) { return 0; }"),
                    frontend::UnsupportedConstruct);
  }

  TEST_CASE("lowered programs run with Java list semantics") {
    auto p = compile_corpus("remove_negatives");
    heap::ProgramState s;
    s.heap.bind("l", s.heap.make_list(std::vector<std::int32_t>{1, -2, 0, -3}));
    auto post = heap::run(p, s);
    CHECK(post.status == heap::Status::Normal);
    CHECK(post.heap.values_of("l") == std::vector<std::int32_t>{1, 0});
  }

  TEST_CASE("an unguarded get faults with IndexOutOfBounds") {
    auto p = frontend::compile(read_text(testing::source_dir() / "tests/data/oob.minij"));
    heap::ProgramState s;
    s.heap.bind("l", s.heap.make_list(std::vector<std::int32_t>{1, 2}));
    auto post = heap::run(p, s);
    CHECK(post.status == heap::Status::Exception);
    REQUIRE(post.fault.has_value());
    CHECK(*post.fault == heap::Fault::IndexOutOfBounds);
  }
}
