#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <stop_token>
#include <vector>

#include "streamline/frontend/ir.hpp"
#include "streamline/heap/enumerate.hpp"
#include "streamline/heap/interpreter.hpp"
#include "streamline/vcgen/candidate.hpp"
#include "streamline/vcgen/counterexample.hpp"
#include "streamline/vcgen/vc.hpp"

namespace streamline::vcgen {

enum class Mode { Equivalence, Invariants };
enum class Outcome { Pass, Fail, NotRefactorable, Timeout };

const char* to_string(Mode mode);
const char* to_string(Outcome outcome);

struct VerifyOptions {
  heap::Bounds bounds;
  std::size_t fuel = heap::kDefaultFuel;
  std::optional<std::chrono::steady_clock::time_point> deadline;
  std::stop_token stop;
  // In equivalence mode, also check the verification conditions along the
  // same runs and record the first violation without failing.
  bool track_invariants = false;
};

struct Verdict {
  Outcome outcome = Outcome::Pass;
  std::optional<Counterexample> cex;  // Fail, and the faulting state of NotRefactorable
  heap::Status status = heap::Status::Normal;
  std::optional<heap::Fault> fault;
  std::uint64_t checked = 0;  // states examined
  bool invariants_tracked = false;
  std::optional<Counterexample> vc_failure;  // first violated condition, when tracked
};

// Runs the original and the candidate on every enumerated pre-state and
// compares the post-states. A fault or fuel exhaustion in the original
// gives NotRefactorable.
Verdict check_end_to_end(const ir::Program& p, const Candidate& c, const VerifyOptions& opts);

// Checks the verification conditions on every enumerated pre-state by
// observing loop heads and exits along the concrete run.
Verdict check_vcs(const ir::Program& p, const Candidate& c, const std::vector<VC>& vcs,
                  const VerifyOptions& opts);

Verdict verify(const ir::Program& p, const Candidate& c, Mode mode, const VerifyOptions& opts);

// Result of checking a single pre-state. In invariants mode a violated
// condition is a mismatch; otherwise it is only reported in `vc_failed`.
struct StateCheck {
  enum class Kind { Ok, Mismatch, Fault };
  Kind kind = Kind::Ok;
  std::string failed_vc;
  std::string detail;
  heap::ProgramState post;  // the original's post-state
  std::string vc_failed;
  std::string vc_detail;
};

StateCheck check_state(const ir::Program& p, const Candidate& c, const heap::ProgramState& pre,
                       Mode mode, std::size_t fuel = heap::kDefaultFuel, bool trace = false);

// Counterexample for a pre-state on which check_state failed.
Counterexample make_counterexample(const ir::Program& p, const Candidate& c,
                                   const heap::ProgramState& pre, std::uint64_t index,
                                   const StateCheck& check);

// True when the post-states of the original and the candidate are
// equivalent on the outputs; `post` is the original's post-state.
bool outputs_match(const ir::Program& p, const Candidate& c, const heap::ProgramState& pre,
                   const heap::ProgramState& post);

// The candidate's post-heap is fixed in shape: every compared list is its
// own header with a private acyclic chain, and each alias reference points
// at the header of its list. With equal values, a heap is isomorphic to it
// exactly when it has the same shape.
bool canonical_shape(const heap::Heap& h, const heap::EquivSpec& spec);

}  // namespace streamline::vcgen
