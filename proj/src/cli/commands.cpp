#include "streamline/cli/commands.hpp"

#include <atomic>
#include <chrono>
#include <fstream>
#include <iostream>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "streamline/codegen/baseline.hpp"
#include "streamline/codegen/emit.hpp"
#include "streamline/frontend/lower.hpp"
#include "streamline/frontend/parser.hpp"
#include "streamline/heap/snapshot.hpp"

namespace streamline::cli {

namespace fs = std::filesystem;

heap::Bounds Options::bounds() const { return heap::Bounds::range(max_list_len, lo, hi, aliasing); }

cegis::SearchConfig Options::config() const {
  cegis::SearchConfig cfg;
  cfg.timeout_seconds = timeout_seconds;
  cfg.bounds = bounds();
  cfg.seed = seed;
  cfg.ga_enabled = ga;
  cfg.mode = mode;
  return cfg;
}

std::pair<std::int32_t, std::int32_t> parse_value_range(const std::string& text) {
  auto dots = text.find("..");
  if (dots == std::string::npos) throw std::invalid_argument("expected lo..hi, got " + text);
  std::size_t used = 0;
  std::string lo_text = text.substr(0, dots);
  std::string hi_text = text.substr(dots + 2);
  int lo = std::stoi(lo_text, &used);
  if (used != lo_text.size()) throw std::invalid_argument("bad lower bound " + lo_text);
  int hi = std::stoi(hi_text, &used);
  if (used != hi_text.size()) throw std::invalid_argument("bad upper bound " + hi_text);
  if (lo > hi) throw std::invalid_argument("empty value range " + text);
  return {lo, hi};
}

namespace {

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

fs::path output_path(const fs::path& input, const Options& opts, const std::string& suffix) {
  fs::path dir = opts.out_dir.empty() ? input.parent_path() : fs::path(opts.out_dir);
  return dir / (input.stem().string() + suffix);
}

std::string frontend_diagnostic(const fs::path& path, const frontend::FrontendError& e) {
  return path.string() + ": " + e.what();
}

void print_log(std::ostream& out, const cegis::IterationLog& e) {
  out << "[" << e.iteration << "] " << e.phase << " " << e.elapsed_ms << "ms";
  if (!e.candidate.empty()) {
    std::string c = e.candidate;
    for (auto& ch : c) {
      if (ch == '\n') ch = ';';
    }
    out << " " << c;
  }
  if (!e.detail.empty()) out << " | " << e.detail;
  for (const auto& k : e.constructors) out << " {" << k << "}";
  out << "\n";
}

}  // namespace

RefactorReport refactor_file(const fs::path& path, const Options& opts, std::ostream* progress) {
  auto start = std::chrono::steady_clock::now();
  std::string source = read_file(path);
  frontend::MiniJProgram ast = frontend::parse(source);
  ir::Program program = frontend::lower(ast);

  RefactorReport r;
  r.input_path = path.string();
  r.bounds = opts.bounds();
  r.seed = opts.seed;
  r.mode = vcgen::to_string(opts.mode);
  r.ga = opts.ga;

  auto baseline = codegen::emit_pattern_baseline(ast);
  std::optional<std::string> baseline_java;
  if (const auto* m = std::get_if<codegen::BaselineMatch>(&baseline)) {
    r.baseline_pattern = m->pattern;
    baseline_java = m->java;
  }

  static std::mutex log_mu;
  cegis::ProgressSink sink;
  if (progress != nullptr) {
    sink = [&](const cegis::IterationLog& e) {
      std::lock_guard lock(log_mu);
      *progress << path.filename().string() << " ";
      print_log(*progress, e);
    };
  }
  cegis::SynthesisResult result = cegis::synthesize(program, opts.config(), sink);
  r.iterations = result.iterations;
  r.counterexample_count = static_cast<int>(result.counterexamples.size());
  auto params = heap::param_specs(program);
  for (const auto& cex : result.counterexamples) {
    r.counterexamples.push_back(heap::constructors(cex.pre, params));
  }
  if (result.candidate) {
    r.outcome = Outcome::Refactored;
    r.length = result.length;
    std::string text = vcgen::candidate_text(program, *result.candidate);
    r.pipeline_text = text;
    r.java_text = codegen::emit(program, *result.candidate);
    if (result.invariant_failure) {
      r.detail = "loop invariant check " + result.invariant_failure->failed_vc + " failed: " +
                 result.invariant_failure->detail;
    }
  } else {
    r.outcome = Outcome::NoRefactoring;
    r.reason = cegis::to_string(*result.failure);
    r.detail = result.detail;
  }

  if (opts.write_files) {
    if (!opts.out_dir.empty()) fs::create_directories(opts.out_dir);
    if (r.java_text && opts.emit != Emit::Pipeline) {
      write_file(output_path(path, opts, ".refactored.java"), *r.java_text);
    }
    if (r.pipeline_text && opts.emit != Emit::Java) {
      write_file(output_path(path, opts, ".pipeline"), *r.pipeline_text);
    }
    if (baseline_java) {
      write_file(output_path(path, opts, ".baseline.java"), *baseline_java);
    } else {
      write_file(output_path(path, opts, ".baseline.NOMATCH"),
                 std::get<codegen::NoMatch>(baseline).reason + "\n");
    }
  }
  r.elapsed_ms = opts.timing ? std::chrono::duration_cast<std::chrono::milliseconds>(
                                   std::chrono::steady_clock::now() - start)
                                   .count()
                             : 0;
  return r;
}

int cmd_refactor(const fs::path& path, const Options& opts, std::ostream& out, std::ostream& err) {
  RefactorReport r;
  try {
    r = refactor_file(path, opts, opts.verbose ? &err : nullptr);
  } catch (const frontend::FrontendError& e) {
    err << frontend_diagnostic(path, e) << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  if (!opts.json_path.empty()) write_file(opts.json_path, to_json(r).dump(2) + "\n");
  if (r.outcome == Outcome::Refactored) {
    if (opts.emit != Emit::Java) out << *r.pipeline_text;
    if (opts.emit != Emit::Pipeline) out << *r.java_text;
    if (!r.detail.empty()) err << "warning: " << r.detail << "\n";
    return kExitOk;
  }
  out << to_string(r.outcome) << " (" << r.reason << "): " << r.detail << "\n";
  return kExitNoRefactoring;
}

CorpusSummary run_corpus(const fs::path& dir, const Options& opts, std::ostream* progress) {
  if (!fs::is_directory(dir)) throw std::runtime_error(dir.string() + " is not a directory");
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".minij") {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());
  std::vector<RefactorReport> rows(files.size());
  auto run_one = [&](std::size_t i) {
    try {
      rows[i] = refactor_file(files[i], opts, progress);
    } catch (const std::exception& e) {
      rows[i] = RefactorReport{};
      rows[i].input_path = files[i].string();
      rows[i].outcome = Outcome::Error;
      const auto* fe = dynamic_cast<const frontend::FrontendError*>(&e);
      rows[i].reason = fe != nullptr ? frontend::to_string(fe->kind()) : "Error";
      rows[i].detail = fe != nullptr ? frontend_diagnostic(files[i], *fe) : e.what();
      rows[i].bounds = opts.bounds();
      rows[i].seed = opts.seed;
      rows[i].mode = vcgen::to_string(opts.mode);
      rows[i].ga = opts.ga;
    }
  };
  int jobs = std::max(1, std::min<int>(opts.jobs, static_cast<int>(files.size())));
  if (jobs <= 1) {
    for (std::size_t i = 0; i < files.size(); ++i) run_one(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> workers;
    for (int w = 0; w < jobs; ++w) {
      workers.emplace_back([&] {
        for (std::size_t i = next++; i < files.size(); i = next++) run_one(i);
      });
    }
  }
  for (auto& r : rows) {
    if (r.outcome == Outcome::NoRefactoring && r.baseline_success()) r.outcome = Outcome::BaselineOnly;
  }
  return summarize(std::move(rows));
}

int cmd_corpus(const fs::path& dir, const Options& opts, std::ostream& out, std::ostream& err) {
  CorpusSummary s;
  try {
    s = run_corpus(dir, opts, opts.verbose ? &err : nullptr);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  out << summary_table(s);
  if (!opts.json_path.empty()) write_file(opts.json_path, to_json(s).dump(2) + "\n");
  return kExitOk;
}

int cmd_verify(const fs::path& program_path, const fs::path& pipelines, const Options& opts,
               std::ostream& out, std::ostream& err) {
  ir::Program program;
  vcgen::Candidate candidate;
  try {
    program = frontend::compile(read_file(program_path));
  } catch (const frontend::FrontendError& e) {
    err << frontend_diagnostic(program_path, e) << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  try {
    candidate = vcgen::parse_candidate(program, read_file(pipelines));
  } catch (const jst::PipelineSyntaxError& e) {
    err << pipelines.string() << ":" << e.line() << ":" << e.column() << ": " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << pipelines.string() << ": " << e.what() << "\n";
    return kExitUsage;
  }
  auto start = std::chrono::steady_clock::now();
  vcgen::VerifyOptions vopts;
  vopts.bounds = opts.bounds();
  vopts.deadline = start + std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                               std::chrono::duration<double>(opts.timeout_seconds));
  vcgen::Verdict v = vcgen::verify(program, candidate, opts.mode, vopts);
  auto elapsed = opts.timing ? std::chrono::duration_cast<std::chrono::milliseconds>(
                                   std::chrono::steady_clock::now() - start)
                                   .count()
                             : 0;
  nlohmann::ordered_json j;
  j["program"] = program_path.string();
  j["pipelines"] = pipelines.string();
  j["outcome"] = vcgen::to_string(v.outcome);
  j["mode"] = vcgen::to_string(opts.mode);
  j["statesChecked"] = v.checked;
  j["elapsedMs"] = elapsed;
  j["boundsUsed"] = bounds_json(opts.bounds());
  if (v.cex) j["counterexample"] = vcgen::counterexample_json(*v.cex, heap::param_specs(program));
  if (!opts.json_path.empty()) write_file(opts.json_path, j.dump(2) + "\n");

  out << vcgen::to_string(v.outcome) << " (" << v.checked << " states)\n";
  if (v.cex) out << vcgen::counterexample_json(*v.cex, heap::param_specs(program)).dump(2) << "\n";
  return v.outcome == vcgen::Outcome::Pass ? kExitOk : kExitNoRefactoring;
}

int cmd_ir(const fs::path& path, std::ostream& out, std::ostream& err) {
  try {
    out << frontend::compile(read_file(path)).listing();
  } catch (const frontend::FrontendError& e) {
    err << frontend_diagnostic(path, e) << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitOk;
}

}  // namespace streamline::cli
