#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "corpus.hpp"
#include "streamline/cli/commands.hpp"

using namespace streamline;
using namespace streamline::cli;
namespace fs = std::filesystem;

namespace {

// Scratch directory removed on destruction.
struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& name) : path(fs::temp_directory_path() / ("streamline_" + name)) {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

Options deterministic(const TempDir& dir) {
  Options o;
  o.ga = false;
  o.timing = false;
  o.out_dir = dir.path.string();
  return o;
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("value ranges") {
    CHECK(parse_value_range("-3..3") == std::pair<std::int32_t, std::int32_t>{-3, 3});
    CHECK(parse_value_range("0..0") == std::pair<std::int32_t, std::int32_t>{0, 0});
    CHECK_THROWS_AS(parse_value_range("3..-3"), std::invalid_argument);
    CHECK_THROWS_AS(parse_value_range("1-2"), std::invalid_argument);
    CHECK_THROWS_AS(parse_value_range("1..2x"), std::invalid_argument);
    CHECK_THROWS(parse_value_range("..2"));
  }

  TEST_CASE("the refactor report matches the golden file") {
    TempDir dir("golden");
    Options o = deterministic(dir);
    auto r = refactor_file(testing::corpus_path("filter_map"), o);
    auto got = to_json(r);
    got["inputPath"] = "filter_map.minij";
    auto want = nlohmann::ordered_json::parse(
        testing::read_text(testing::source_dir() / "tests/golden/filter_map.json"));
    CHECK(got.dump(2) == want.dump(2));
    CHECK(fs::exists(dir.path / "filter_map.refactored.java"));
    CHECK(fs::exists(dir.path / "filter_map.baseline.java"));
  }

  TEST_CASE("refactor exit codes") {
    TempDir dir("exit");
    Options o = deterministic(dir);
    o.max_list_len = 3;
    std::ostringstream out;
    std::ostringstream err;
    CHECK(cmd_refactor(testing::corpus_path("remove_negatives"), o, out, err) == kExitOk);
    CHECK(out.str().find("forEachOrdered(l::add)") != std::string::npos);

    out.str("");
    CHECK(cmd_refactor(testing::source_dir() / "tests/data/oob.minij", o, out, err) == kExitNoRefactoring);
    CHECK(out.str().rfind("NoRefactoring (NotRefactorable)", 0) == 0);

    out.str("");
    Options zero = o;
    zero.timeout_seconds = 0;
    CHECK(cmd_refactor(testing::corpus_path("filter_map"), zero, out, err) == kExitNoRefactoring);
    CHECK(out.str().rfind("NoRefactoring (Timeout)", 0) == 0);

    err.str("");
    CHECK(cmd_refactor(dir.path / "missing.minij", o, out, err) == kExitUsage);
    CHECK_FALSE(err.str().empty());
  }

  TEST_CASE("corpus directories") {
    TempDir empty("empty");
    Options o = deterministic(empty);
    auto none = run_corpus(empty.path, o);
    CHECK(none.rows.empty());
    CHECK(to_json(none)["total"] == 0);

    TempDir mixed("mixed");
    o = deterministic(mixed);
    o.max_list_len = 3;
    fs::copy_file(testing::corpus_path("remove_negatives"), mixed.path / "a.minij");
    std::ofstream(mixed.path / "b.minij") << "void f(List<Integer> l) { l.add( }\n";
    std::ofstream(mixed.path / "c.txt") << "ignored\n";
    auto s = run_corpus(mixed.path, o);
    REQUIRE(s.rows.size() == 2);
    CHECK(s.rows[0].outcome == Outcome::Refactored);
    CHECK(s.rows[1].outcome == Outcome::Error);
    CHECK(s.rows[1].reason == "SyntaxError");
    CHECK(s.semantic == 1);
    CHECK(s.baseline == 1);
    CHECK(s.either == 1);
    CHECK(s.errors == 1);

    std::ostringstream out;
    std::ostringstream err;
    CHECK(cmd_corpus(mixed.path / "nope", o, out, err) == kExitUsage);
  }

  TEST_CASE("a baseline match upgrades a failed corpus row") {
    TempDir dir("upgrade");
    Options o = deterministic(dir);
    o.timeout_seconds = 0;
    fs::copy_file(testing::corpus_path("filter_map"), dir.path / "filter_map.minij");
    auto s = run_corpus(dir.path, o);
    REQUIRE(s.rows.size() == 1);
    CHECK(s.rows[0].outcome == Outcome::BaselineOnly);
    CHECK(s.rows[0].reason == "Timeout");
    CHECK(s.semantic == 0);
    CHECK(s.either == 1);
  }

  TEST_CASE("verify reports counterexamples") {
    TempDir dir("verify");
    Options o = deterministic(dir);
    o.max_list_len = 2;
    o.json_path = (dir.path / "v.json").string();
    std::ofstream(dir.path / "bad.pipe") << "list.stream().map(v -> 2*v) => newList\n";
    std::ofstream(dir.path / "good.pipe") << "# comment\nlist.stream().filter(v -> v > 0).map(v -> 2*v) => newList\n";
    std::ofstream(dir.path / "broken.pipe") << "list.stream().map(v -> ) => newList\n";
    std::ostringstream out;
    std::ostringstream err;
    auto prog = testing::corpus_path("filter_map");
    CHECK(cmd_verify(prog, dir.path / "good.pipe", o, out, err) == kExitOk);
    CHECK(cmd_verify(prog, dir.path / "bad.pipe", o, out, err) == kExitNoRefactoring);
    auto j = nlohmann::json::parse(testing::read_text(o.json_path));
    CHECK(j["outcome"] == "Fail");
    CHECK(j.contains("counterexample"));
    CHECK(cmd_verify(prog, dir.path / "broken.pipe", o, out, err) == kExitUsage);
    CHECK(err.str().find("broken.pipe:1:") != std::string::npos);
  }

  TEST_CASE("ir listing") {
    std::ostringstream out;
    std::ostringstream err;
    CHECK(cmd_ir(testing::corpus_path("remove_negatives"), out, err) == kExitOk);
    CHECK_FALSE(out.str().empty());
  }
}
