#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "streamline/cli/commands.hpp"

namespace {

using streamline::cli::Emit;
using streamline::cli::Options;

void add_engine_flags(CLI::App& cmd, Options& opts, std::string& values, std::string& mode) {
  cmd.add_option("--timeout", opts.timeout_seconds, "Time budget in seconds")
      ->check(CLI::NonNegativeNumber);
  cmd.add_option("--max-list-len", opts.max_list_len, "Longest list in the checked universe")
      ->check(CLI::Range(0, 16));
  cmd.add_option("--values", values, "Element values as lo..hi");
  cmd.add_flag("!--no-aliasing", opts.aliasing, "Skip the aliased variants of each state");
  cmd.add_option("--mode", mode, "equivalence or invariants")
      ->check(CLI::IsMember({"equivalence", "invariants"}));
  cmd.add_option("--json", opts.json_path, "Write the JSON report here");
  cmd.add_flag("!--no-timing", opts.timing, "Report elapsed times as 0");
}

void add_search_flags(CLI::App& cmd, Options& opts, std::string& emit) {
  cmd.add_option("--seed", opts.seed, "Seed of the genetic search");
  cmd.add_flag("!--no-ga", opts.ga, "Run the enumerative search alone");
  cmd.add_option("--emit", emit, "java, pipeline or both")
      ->check(CLI::IsMember({"java", "pipeline", "both"}));
  cmd.add_option("--out-dir", opts.out_dir, "Directory for output files");
  cmd.add_flag("-v,--verbose", opts.verbose, "Print the refinement log to stderr");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Refactors MiniJ list loops into Java stream pipelines"};
  app.require_subcommand(1);
  Options opts;
  std::string values = "-3..3";
  std::string mode = "equivalence";
  std::string emit = "java";
  std::string input;
  std::string pipelines;

  auto* refactor = app.add_subcommand("refactor", "Synthesize a pipeline for one file");
  refactor->add_option("file", input, "MiniJ source")->required();
  add_engine_flags(*refactor, opts, values, mode);
  add_search_flags(*refactor, opts, emit);

  auto* corpus = app.add_subcommand("corpus", "Refactor every .minij file of a directory");
  corpus->add_option("dir", input, "Corpus directory")->required();
  corpus->add_option("--jobs", opts.jobs, "Files processed in parallel")->check(CLI::PositiveNumber);
  add_engine_flags(*corpus, opts, values, mode);
  add_search_flags(*corpus, opts, emit);

  auto* verify = app.add_subcommand("verify", "Check a hand-written pipeline file");
  verify->add_option("file", input, "MiniJ source")->required();
  verify->add_option("pipelines", pipelines, "One `term => target` line per output")->required();
  add_engine_flags(*verify, opts, values, mode);

  auto* ir = app.add_subcommand("ir", "Print the lowered program");
  ir->add_option("file", input, "MiniJ source")->required();

  try {
    app.parse(argc, argv);
    auto [lo, hi] = streamline::cli::parse_value_range(values);
    opts.lo = lo;
    opts.hi = hi;
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : streamline::cli::kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return streamline::cli::kExitUsage;
  }
  opts.mode = mode == "invariants" ? streamline::vcgen::Mode::Invariants
                                   : streamline::vcgen::Mode::Equivalence;
  opts.emit = emit == "both" ? Emit::Both : emit == "pipeline" ? Emit::Pipeline : Emit::Java;

  if (*refactor) return streamline::cli::cmd_refactor(input, opts, std::cout, std::cerr);
  if (*corpus) return streamline::cli::cmd_corpus(input, opts, std::cout, std::cerr);
  if (*verify) return streamline::cli::cmd_verify(input, pipelines, opts, std::cout, std::cerr);
  return streamline::cli::cmd_ir(input, std::cout, std::cerr);
}
