#include "streamline/cegis/synthesize.hpp"

#include <chrono>
#include <condition_variable>
#include <stdexcept>
#include <thread>

#include "streamline/heap/snapshot.hpp"

namespace streamline::cegis {

const char* to_string(Failure f) {
  switch (f) {
    case Failure::Timeout: return "Timeout";
    case Failure::NotRefactorable: return "NotRefactorable";
    case Failure::InstructionSetExhausted: return "InstructionSetExhausted";
  }
  return "?";
}

namespace {

using Clock = std::chrono::steady_clock;

// Requests stop on `source` when the deadline passes.
class Watchdog {
 public:
  Watchdog(std::stop_source source, Clock::time_point deadline)
      : thread_([source, deadline](std::stop_token st) mutable {
          std::mutex mu;
          std::condition_variable_any cv;
          std::unique_lock lock(mu);
          if (!cv.wait_until(lock, st, deadline, [] { return false; })) {
            if (!st.stop_requested()) source.request_stop();
          }
        }) {}

 private:
  std::jthread thread_;
};

}  // namespace

SynthesisResult synthesize(const ir::Program& p, const SearchConfig& cfg, const ProgressSink& sink,
                           std::stop_token stop, QuantumClock clock) {
  cfg.validate();
  auto start = Clock::now();
  auto deadline = start + std::chrono::duration_cast<Clock::duration>(
                              std::chrono::duration<double>(cfg.timeout_seconds));
  std::stop_source budget;
  std::stop_callback forward(stop, [&] { budget.request_stop(); });
  Watchdog watchdog(budget, deadline);

  SynthesisResult out;
  auto params = heap::param_specs(p);
  auto elapsed = [&] {
    return std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - start).count();
  };
  auto log = [&](std::string phase, const vcgen::Candidate* c, std::string detail,
                 std::vector<std::string> constructors = {}) {
    IterationLog entry;
    entry.iteration = out.iterations;
    entry.phase = std::move(phase);
    if (c != nullptr) {
      entry.candidate = vcgen::candidate_text(p, *c);
      if (!entry.candidate.empty() && entry.candidate.back() == '\n') entry.candidate.pop_back();
    }
    entry.constructors = std::move(constructors);
    entry.elapsed_ms = elapsed();
    entry.detail = std::move(detail);
    if (sink) sink(entry);
    out.log.push_back(std::move(entry));
  };
  auto fail = [&](Failure f, std::string detail) {
    out.failure = f;
    out.detail = std::move(detail);
    return out;
  };

  if (cfg.timeout_seconds <= 0) return fail(Failure::Timeout, "no time budget");

  Grammar grammar(p, cfg);
  Enumerator enumerator(p, grammar);
  CexSet cex(p);

  vcgen::Candidate current;
  for (const auto& o : p.outputs) current.post[o.name] = jst::Pipeline{};
  current.inv = vcgen::derive_invariants(p, current.post);
  int length = 0;
  log("seed", &current, "trivial candidate");

  vcgen::VerifyOptions vopts;
  vopts.bounds = cfg.bounds;
  vopts.fuel = cfg.fuel;
  vopts.deadline = deadline;
  vopts.stop = budget.get_token();
  vopts.track_invariants = cfg.mode == vcgen::Mode::Equivalence;

  while (true) {
    ++out.iterations;
    if (!consistent(p, current, cex)) {
      throw std::logic_error("search returned a candidate inconsistent with the counterexamples");
    }
    vcgen::Verdict v = vcgen::verify(p, current, cfg.mode, vopts);
    switch (v.outcome) {
      case vcgen::Outcome::Pass:
        out.length = length;
        out.invariants_checked = v.invariants_tracked;
        out.invariant_failure = v.vc_failure;
        log("pass", &current, std::to_string(v.checked) + " states");
        out.candidate = std::move(current);
        return out;
      case vcgen::Outcome::Timeout:
        return fail(Failure::Timeout, "verification exceeded the time budget");
      case vcgen::Outcome::NotRefactorable:
        out.fault = v.cex;
        log("verify", &current, v.cex->detail, heap::constructors(v.cex->pre, params));
        return fail(Failure::NotRefactorable, v.cex->detail);
      case vcgen::Outcome::Fail:
        break;
    }
    const vcgen::Counterexample& ce = *v.cex;
    log("verify", &current, ce.failed_vc + ": " + ce.detail, heap::constructors(ce.pre, params));
    out.rejected.push_back(current);
    if (!cex.add(ce) || consistent(p, current, cex)) {
      return fail(Failure::NotRefactorable,
                  "candidate matches the original's outputs on the counterexample but fails " +
                      ce.failed_vc + " (" + ce.detail + ")");
    }
    out.counterexamples.push_back(ce);

    if (length == 0) length = 1;
    while (true) {
      if (length > cfg.max_pipeline_len) {
        return fail(Failure::InstructionSetExhausted,
                    "no consistent pipeline up to length " + std::to_string(cfg.max_pipeline_len));
      }
      RaceOutcome r =
          race_searches(enumerator, p, grammar, cex, length, cfg, budget.get_token(), clock);
      if (r.status == SearchStatus::Found) {
        current = std::move(*r.candidate);
        log("synthesize", &current,
            std::string(to_string(r.winner)) + ", length " + std::to_string(length));
        break;
      }
      if (r.status == SearchStatus::Stopped) {
        return fail(Failure::Timeout, "search exceeded the time budget");
      }
      log("exhausted", nullptr, "length " + std::to_string(length));
      ++length;
    }
  }
}

}  // namespace streamline::cegis
