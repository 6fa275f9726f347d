// Acceptance run: one PASS/FAIL line per criterion. Expected values come
// from reference implementations written here over plain vectors.

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "corpus.hpp"
#include "heap_gen.hpp"
#include "jst_oracle.hpp"
#include "streamline/cegis/grammar.hpp"
#include "streamline/cegis/synthesize.hpp"
#include "streamline/cli/commands.hpp"
#include "streamline/codegen/baseline.hpp"
#include "streamline/codegen/stream_reader.hpp"
#include "streamline/frontend/parser.hpp"
#include "streamline/heap/equivalence.hpp"
#include "streamline/jst/eval.hpp"
#include "streamline/vcgen/candidate.hpp"
#include "streamline/vcgen/verify.hpp"

using namespace streamline;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;
using Seq = std::vector<std::int32_t>;

namespace {

double seconds_since(Clock::time_point t) {
  return std::chrono::duration<double>(Clock::now() - t).count();
}

struct Verdict {
  bool pass = true;
  std::ostringstream detail;

  void fail(const std::string& why) {
    if (pass) detail.str("");
    if (!pass) detail << "; ";
    pass = false;
    detail << why;
  }
};

int failures = 0;

void report(const std::string& name, Verdict& v) {
  std::cout << (v.pass ? "PASS " : "FAIL ") << name << ": " << v.detail.str() << std::endl;
  failures += !v.pass;
}

// ---- reference semantics -------------------------------------------------

// Expected outputs of a corpus method, keyed by output name.
using Reference = std::function<std::map<std::string, Seq>(const jst::ValueInputs&)>;

Seq filter_double(const Seq& in) {
  Seq out;
  for (auto v : in) {
    if (v > 0) out.push_back(2 * v);
  }
  return out;
}

const std::map<std::string, Reference>& references() {
  static const std::map<std::string, Reference> refs = {
      {"indexed_filter_map", [](const jst::ValueInputs& in) {
         return std::map<std::string, Seq>{{"return", filter_double(in.list("org"))}};
       }},
      {"iterator_filter_map", [](const jst::ValueInputs& in) {
         return std::map<std::string, Seq>{{"return", filter_double(in.list("org"))}};
       }},
      {"find_first_positive", [](const jst::ValueInputs& in) {
         Seq out;
         for (auto v : in.list("data")) {
           if (v % 2 == 0) {
             out.push_back(v);
             break;
           }
         }
         return std::map<std::string, Seq>{{"return", out}};
       }},
      {"filter_map", [](const jst::ValueInputs& in) {
         return std::map<std::string, Seq>{{"return", filter_double(in.list("list"))}};
       }},
      {"remove_negatives", [](const jst::ValueInputs& in) {
         Seq out;
         for (auto v : in.list("l")) {
           if (v >= 0) out.push_back(v);
         }
         return std::map<std::string, Seq>{{"l", out}};
       }},
      {"sum_skip", [](const jst::ValueInputs& in) {
         const Seq& l = in.list("l");
         const Seq& p = in.list("p");
         std::int32_t sum = 0;
         for (auto v : l) sum += v;
         Seq rest(p.begin() + static_cast<std::ptrdiff_t>(std::min(l.size(), p.size())), p.end());
         return std::map<std::string, Seq>{{"return", {sum}}, {"p", rest}};
       }},
      {"selection_sort", [](const jst::ValueInputs& in) {
         Seq out = in.list("l");
         std::sort(out.begin(), out.end());
         return std::map<std::string, Seq>{{"l", out}};
       }},
  };
  return refs;
}

// Calls fn on every assignment of lists of length <= max_len over lo..hi
// to the given list names.
void for_each_lists(const std::vector<std::string>& names, int max_len, std::int32_t lo,
                    std::int32_t hi, const std::function<void(const jst::ValueInputs&)>& fn) {
  std::vector<Seq> all;
  std::function<void(Seq&)> grow = [&](Seq& cur) {
    all.push_back(cur);
    if (static_cast<int>(cur.size()) == max_len) return;
    for (std::int32_t v = lo; v <= hi; ++v) {
      cur.push_back(v);
      grow(cur);
      cur.pop_back();
    }
  };
  Seq start;
  grow(start);
  jst::ValueInputs in;
  in.list_names = names;
  in.lists.assign(names.size(), {});
  std::function<void(std::size_t)> pick = [&](std::size_t i) {
    if (i == names.size()) {
      fn(in);
      return;
    }
    for (const auto& s : all) {
      in.lists[i] = s;
      pick(i + 1);
    }
  };
  pick(0);
}

std::vector<std::string> list_params(const ir::Program& p) {
  std::vector<std::string> out;
  for (const auto& ps : heap::param_specs(p)) {
    if (ps.is_list) out.push_back(ps.name);
  }
  return out;
}

Seq as_seq(const ir::Output& o, const jst::Value& v) {
  return ir::is_list(o.kind) ? v.list : Seq{v.scalar};
}

std::string seq_text(const Seq& s) {
  std::string out = "[";
  for (std::size_t i = 0; i < s.size(); ++i) out += (i ? "," : "") + std::to_string(s[i]);
  return out + "]";
}

// First input on which the candidate's outputs differ from the reference.
std::optional<std::string> first_difference(const ir::Program& p, const vcgen::Candidate& c,
                                            const Reference& ref, const heap::Bounds& b) {
  std::optional<std::string> diff;
  std::int32_t lo = b.values.front();
  std::int32_t hi = b.values.back();
  for_each_lists(list_params(p), b.max_len, lo, hi, [&](const jst::ValueInputs& in) {
    if (diff) return;
    auto got = vcgen::candidate_outputs(p, c, in);
    auto want = ref(in);
    for (std::size_t i = 0; i < p.outputs.size(); ++i) {
      const auto& o = p.outputs[i];
      if (as_seq(o, got[i]) != want.at(o.name)) {
        std::string where;
        for (std::size_t k = 0; k < in.list_names.size(); ++k) {
          where += in.list_names[k] + "=" + seq_text(in.lists[k]) + " ";
        }
        diff = where + o.name + " got " + seq_text(as_seq(o, got[i])) + " want " +
               seq_text(want.at(o.name));
        return;
      }
    }
  });
  return diff;
}

// ---- criteria --------------------------------------------------------------

struct CorpusRun {
  cli::CorpusSummary summary;
  std::map<std::string, const cli::RefactorReport*> by_stem;
};

void worked_examples(const CorpusRun& run) {
  Verdict v;
  heap::Bounds bounds;
  int checked = 0;
  for (const auto& [stem, ref] : references()) {
    auto it = run.by_stem.find(stem);
    if (it == run.by_stem.end()) {
      v.fail(stem + " missing from the corpus");
      continue;
    }
    const auto& r = *it->second;
    if (r.outcome != cli::Outcome::Refactored) {
      v.fail(stem + " " + cli::to_string(r.outcome) + " (" + r.reason + ")");
      continue;
    }
    if (r.elapsed_ms > 60000) v.fail(stem + " took " + std::to_string(r.elapsed_ms) + " ms");
    auto p = testing::compile_corpus(stem);
    auto emitted = codegen::read_stream_java(p, *r.java_text);
    if (auto diff = first_difference(p, emitted, ref, bounds)) v.fail(stem + ": " + *diff);
    ++checked;
  }
  if (v.pass) v.detail << checked << " files refactored, emitted code equal to the reference on the default universe";
  report("worked-example reproduction", v);
}

void refinement_trace() {
  Verdict v;
  auto p = testing::compile_corpus("filter_map");
  cegis::SearchConfig cfg;
  cfg.ga_enabled = false;
  cfg.seed = 0;
  auto r = cegis::synthesize(p, cfg);
  if (!r.candidate) {
    v.fail("synthesis failed: " + r.detail);
    report("CEGIS refinement trace", v);
    return;
  }
  const auto& ref = references().at("filter_map");
  auto separated = [&](const vcgen::Candidate& c) {
    for (const auto& cex : r.counterexamples) {
      auto in = vcgen::inputs_of(p, cex.pre);
      if (vcgen::candidate_outputs(p, c, in)[0].list != ref(in).at("return")) return true;
    }
    return false;
  };
  auto must_separate = [&](const std::string& text) {
    if (!separated(vcgen::parse_candidate(p, text + " => newList"))) v.fail("not separated: " + text);
  };
  must_separate("list.stream()");
  must_separate("list.stream().filter(v -> true).map(v -> 2*v)");
  int sign_confused = 0;
  for (const char* pred : {"v < 0", "v <= 0", "v >= 0", "v != 0", "v == 0"}) {
    sign_confused += separated(vcgen::parse_candidate(
        p, std::string("list.stream().filter(v -> ") + pred + ").map(v -> 2*v) => newList"));
  }
  if (sign_confused == 0) v.fail("no sign-confused filter is separated");
  for (const auto& c : r.rejected) {
    if (!separated(c)) v.fail("rejected candidate not separated: " + vcgen::candidate_text(p, c));
  }
  if (v.pass) {
    v.detail << "cex values";
    for (const auto& cex : r.counterexamples) v.detail << " " << seq_text(vcgen::inputs_of(p, cex.pre).list("list"));
    v.detail << "; identity, filter(true), " << sign_confused << "/5 sign-confused filters and "
             << r.rejected.size() << " rejected candidates separated";
  }
  report("CEGIS refinement trace", v);
}

void unsoundness_detection() {
  Verdict v;
  fs::path dir = fs::temp_directory_path() / "streamline_acceptance_unsound";
  fs::create_directories(dir);
  fs::path pipes = dir / "sum_only.pipe";
  std::ofstream(pipes) << "l.stream().reduce(0, Integer::sum) => sum\nunchanged => p\n";
  cli::Options opts;
  opts.json_path = (dir / "verdict.json").string();
  std::ostringstream out;
  std::ostringstream err;
  auto start = Clock::now();
  int code = cli::cmd_verify(testing::corpus_path("sum_skip"), pipes, opts, out, err);
  double secs = seconds_since(start);
  auto j = nlohmann::json::parse(testing::read_text(opts.json_path));
  fs::remove_all(dir);
  if (code != cli::kExitNoRefactoring || j["outcome"] != "Fail") v.fail("not rejected: " + out.str() + err.str());
  bool p_nonempty = false;
  if (j.contains("counterexample")) {
    for (const auto& step : j["counterexample"]["constructors"]) {
      p_nonempty = p_nonempty || step.get<std::string>().rfind("add h p ", 0) == 0;
    }
  }
  if (!p_nonempty) v.fail("counterexample has an empty p");
  if (secs >= 5) v.fail("took " + std::to_string(secs) + " s");
  if (v.pass) {
    v.detail << "rejected in " << secs << " s with " << j["counterexample"]["constructors"].dump();
  }
  report("unsoundness detection", v);
}

// Every pipeline for one output of exactly `length` stages.
std::vector<jst::Pipeline> pipelines_of_length(const ir::Output& o, const cegis::Grammar& g, int length) {
  std::vector<jst::Pipeline> out;
  if (length == 0) out.push_back(jst::Pipeline{});
  bool list_out = ir::is_list(o.kind);
  int stage_count = list_out ? length : length - 1;
  if (stage_count < 0) return out;
  std::function<void(jst::Pipeline&, int)> extend = [&](jst::Pipeline& cur, int left) {
    if (left == 0) {
      if (list_out) {
        out.push_back(cur);
      } else {
        for (const auto& t : g.terminals(o.kind)) {
          cur.terminal = t;
          out.push_back(cur);
        }
        cur.terminal.reset();
      }
      return;
    }
    for (const auto& s : g.stages()) {
      cur.stages.push_back(s);
      extend(cur, left - 1);
      cur.stages.pop_back();
    }
  };
  for (const auto& src : g.lists()) {
    jst::Pipeline start;
    start.source = src;
    extend(start, stage_count);
  }
  return out;
}

void minimality(const CorpusRun& run) {
  Verdict v;
  auto start = Clock::now();
  std::uint64_t tried = 0;
  int programs = 0;
  vcgen::VerifyOptions vopts;
  for (const auto& row : run.summary.rows) {
    if (row.outcome != cli::Outcome::Refactored) continue;
    ++programs;
    fs::path path(row.input_path);
    auto p = testing::compile_corpus(path.stem().string());
    cegis::Grammar g(p, cegis::SearchConfig{});
    for (int total = 0; total < row.length; ++total) {
      std::vector<std::vector<int>> splits;
      std::vector<int> split(p.outputs.size(), 0);
      std::function<void(std::size_t, int)> gen = [&](std::size_t i, int left) {
        if (i + 1 == split.size()) {
          split[i] = left;
          splits.push_back(split);
          return;
        }
        for (int k = 0; k <= left; ++k) {
          split[i] = k;
          gen(i + 1, left - k);
        }
      };
      gen(0, total);
      for (const auto& s : splits) {
        std::vector<std::vector<jst::Pipeline>> choices;
        for (std::size_t i = 0; i < p.outputs.size(); ++i) {
          choices.push_back(pipelines_of_length(p.outputs[i], g, s[i]));
        }
        vcgen::Candidate c;
        std::function<void(std::size_t)> pick = [&](std::size_t i) {
          if (i == choices.size()) {
            try {
              vcgen::check_shape(p, c);
            } catch (const vcgen::ShapeMismatch&) {
              return;
            }
            ++tried;
            if (vcgen::check_end_to_end(p, c, vopts).outcome == vcgen::Outcome::Pass) {
              v.fail(path.filename().string() + " has a shorter verified candidate: " +
                     vcgen::candidate_text(p, c));
            }
            return;
          }
          for (const auto& pipe : choices[i]) {
            c.post[p.outputs[i].name] = pipe;
            pick(i + 1);
          }
        };
        pick(0);
      }
    }
  }
  double secs = seconds_since(start);
  if (secs > 600) v.fail("took " + std::to_string(secs) + " s");
  if (v.pass) {
    v.detail << tried << " shorter candidates over " << programs << " successes all refuted in " << secs << " s";
  }
  report("minimality", v);
}

void baseline_gap(const CorpusRun& run) {
  Verdict v;
  auto baseline = [](const std::string& stem) {
    return codegen::emit_pattern_baseline(frontend::parse(testing::read_text(testing::corpus_path(stem))));
  };
  if (!std::holds_alternative<codegen::BaselineMatch>(baseline("indexed_filter_map"))) v.fail("baseline misses the indexed loop");
  if (!std::holds_alternative<codegen::NoMatch>(baseline("iterator_filter_map"))) v.fail("baseline matches the iterator loop");
  const auto* a = run.by_stem.at("indexed_filter_map");
  const auto* b = run.by_stem.at("iterator_filter_map");
  if (a->outcome != cli::Outcome::Refactored || b->outcome != cli::Outcome::Refactored) {
    v.fail("semantic engine misses one of the two loops");
  } else {
    auto pa = testing::compile_corpus("indexed_filter_map");
    auto pb = testing::compile_corpus("iterator_filter_map");
    auto ca = codegen::read_stream_java(pa, *a->java_text);
    auto cb = codegen::read_stream_java(pb, *b->java_text);
    Reference other = [&](const jst::ValueInputs& in) {
      return std::map<std::string, Seq>{{"return", vcgen::candidate_outputs(pb, cb, in)[0].list}};
    };
    if (auto diff = first_difference(pa, ca, other, heap::Bounds{})) v.fail("the two outputs differ: " + *diff);
  }
  std::set<std::string> semantic;
  std::set<std::string> either;
  for (const auto& r : run.summary.rows) {
    if (r.outcome == cli::Outcome::Refactored) semantic.insert(r.input_path);
    if (r.outcome == cli::Outcome::Refactored || r.baseline_pattern) either.insert(r.input_path);
  }
  if (run.summary.either != static_cast<int>(either.size())) v.fail("union count disagrees with the rows");
  if (either.size() < semantic.size()) v.fail("union smaller than the semantic count");
  if (v.pass) {
    v.detail << "baseline 1/2 on the two loops, semantic 2/2 with equal pipelines; corpus semantic "
             << semantic.size() << ", baseline " << run.summary.baseline << ", union " << either.size() << " of "
             << run.summary.rows.size();
  }
  report("baseline gap", v);
}

void jst_oracle() {
  Verdict v;
  auto start = Clock::now();
  auto r = testing::run_jst_oracle(2, 3, -2, 2);
  double secs = seconds_since(start);
  if (r.mismatches != 0) v.fail(std::to_string(r.mismatches) + " mismatches, first: " + r.samples.front());
  if (r.opcodes_covered.size() != std::size(jst::kAllOpcodes)) {
    v.fail("covered " + std::to_string(r.opcodes_covered.size()) + " opcodes");
  }
  if (secs >= 120) v.fail("took " + std::to_string(secs) + " s");
  if (v.pass) {
    v.detail << r.cases << " cases over " << r.heaps << " heaps, " << r.opcodes_covered.size()
             << " opcodes, 0 mismatches in " << secs << " s";
  }
  report("JST oracle suite", v);
}

void heap_laws() {
  Verdict v;
  const std::vector<std::string> refs = {"x", "y", "z"};
  std::mt19937 rng(2024);
  int violations = 0;
  int related = 0;
  for (int i = 0; i < 10000; ++i) {
    auto a = testing::random_heap(rng, refs);
    auto b = (i % 3 == 0) ? testing::random_heap(rng, refs) : testing::permuted(a, rng);
    auto c = (i % 5 == 0) ? testing::random_heap(rng, refs) : testing::permuted(b, rng);
    bool ab = heap::heap_equiv(a, b, refs);
    bool bc = heap::heap_equiv(b, c, refs);
    related += ab;
    violations += !heap::heap_equiv(a, a, refs);
    violations += ab != heap::heap_equiv(b, a, refs);
    violations += ab && bc && !heap::heap_equiv(a, c, refs);
  }
  if (violations) v.fail(std::to_string(violations) + " equivalence-relation violations");

  // equalLists on two heaps against equivalence at a single list root.
  int list_violations = 0;
  for (int i = 0; i < 10000; ++i) {
    auto draw = [&] {
      Seq s(std::uniform_int_distribution<int>(0, 3)(rng));
      for (auto& x : s) x = std::uniform_int_distribution<int>(0, 1)(rng);
      return s;
    };
    Seq u = draw();
    Seq w = (i % 2 == 0) ? u : draw();
    heap::Heap a;
    a.bind("x", a.make_list(u));
    heap::Heap b0;
    b0.bind("x", b0.make_list(w));
    heap::Heap b = testing::permuted(b0, rng);
    jst::JstOp eq;
    eq.code = jst::Opcode::EqualLists;
    eq.heap_in = "h";
    eq.heap_other = "g";
    eq.refs = {"x", std::string(jst::kNullRef), "x", std::string(jst::kNullRef)};
    eq.result = "e";
    jst::Env env;
    env.heaps.emplace("g", b);
    bool op = jst::eval_op(eq, a, env).value.value_or(0) != 0;
    bool iso = heap::heap_equiv(a, b, std::vector<std::string>{"x"});
    list_violations += (op != iso) + (iso != (u == w));
  }
  if (list_violations) v.fail(std::to_string(list_violations) + " equalLists disagreements");
  if (v.pass) {
    v.detail << "10000 random triples (" << related << " equivalent pairs) and 10000 list pairs, 0 violations";
  }
  report("heap-equivalence laws", v);
}

void vc_consistency(const CorpusRun& run) {
  Verdict v;
  auto start = Clock::now();
  int checked = 0;
  vcgen::VerifyOptions vopts;
  for (const auto& row : run.summary.rows) {
    if (row.outcome != cli::Outcome::Refactored) continue;
    auto p = testing::compile_corpus(fs::path(row.input_path).stem().string());
    auto c = vcgen::parse_candidate(p, *row.pipeline_text);
    auto verdict = vcgen::verify(p, c, vcgen::Mode::Invariants, vopts);
    if (verdict.outcome != vcgen::Outcome::Pass) {
      std::string why = verdict.cex ? verdict.cex->failed_vc + " " + verdict.cex->detail : "";
      v.fail(fs::path(row.input_path).filename().string() + " " + vcgen::to_string(verdict.outcome) + " " + why);
    }
    ++checked;
  }
  if (v.pass) v.detail << checked << " successes pass in invariants mode (" << seconds_since(start) << " s)";
  report("VC consistency", v);
}

}  // namespace

int main() {
  cli::Options opts;
  opts.write_files = false;
  CorpusRun run;
  run.summary = cli::run_corpus(testing::source_dir() / "corpus", opts);
  for (const auto& r : run.summary.rows) run.by_stem[fs::path(r.input_path).stem().string()] = &r;

  worked_examples(run);
  refinement_trace();
  unsoundness_detection();
  minimality(run);
  baseline_gap(run);
  jst_oracle();
  heap_laws();
  vc_consistency(run);
  std::cout << (failures == 0 ? "all criteria met" : std::to_string(failures) + " criteria failed") << std::endl;
  return failures == 0 ? 0 : 1;
}
