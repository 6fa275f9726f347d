#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <stop_token>
#include <string>
#include <vector>

#include "streamline/cegis/grammar.hpp"
#include "streamline/cegis/race.hpp"

namespace streamline::cegis {

enum class Failure { Timeout, NotRefactorable, InstructionSetExhausted };

const char* to_string(Failure f);

// One line of the progress log.
struct IterationLog {
  int iteration = 0;
  std::string phase;  // seed, verify, synthesize, exhausted, pass
  std::string candidate;
  std::vector<std::string> constructors;  // counterexample, for verify
  std::int64_t elapsed_ms = 0;
  std::string detail;
};

struct SynthesisResult {
  std::optional<vcgen::Candidate> candidate;
  std::optional<Failure> failure;
  std::string detail;
  int iterations = 0;
  int length = 0;
  std::vector<IterationLog> log;
  std::vector<vcgen::Counterexample> counterexamples;
  std::vector<vcgen::Candidate> rejected;  // refuted candidates, in order
  std::optional<vcgen::Counterexample> fault;  // NotRefactorable state
  // Verification conditions checked on the final run, and the first one
  // violated if any.
  bool invariants_checked = false;
  std::optional<vcgen::Counterexample> invariant_failure;
};

using ProgressSink = std::function<void(const IterationLog&)>;

// The refinement loop: verify the current candidate; on a counterexample
// add it to the set and search for the next consistent candidate, trying
// lengths in increasing order.
SynthesisResult synthesize(const ir::Program& p, const SearchConfig& cfg,
                           const ProgressSink& sink = {}, std::stop_token stop = {},
                           QuantumClock clock = {});

}  // namespace streamline::cegis
