#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "streamline/frontend/ir.hpp"
#include "streamline/heap/equivalence.hpp"
#include "streamline/heap/state.hpp"
#include "streamline/jst/pipeline.hpp"
#include "streamline/jst/text.hpp"
#include "streamline/vcgen/invariant.hpp"

namespace streamline::vcgen {

class ShapeMismatch : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A proposed refactoring: one pipeline per program output (the final-state
// formula) and the loop invariants derived from it.
struct Candidate {
  std::map<std::string, jst::Pipeline> post;  // keyed by ir::Output::name
  std::map<int, Invariant> inv;               // keyed by loop id

  // Number of semantic stages over all outputs.
  int length() const;
};

// Throws ShapeMismatch unless every output has a pipeline of fitting type
// whose references are list parameters and whose counts name parameters.
void check_shape(const ir::Program& p, const Candidate& c);

// Pipeline inputs read from a pre-state: list parameters and scalars.
jst::ValueInputs inputs_of(const ir::Program& p, const heap::ProgramState& pre);

// Value of one output under the candidate; trivial pipelines leave
// in-place lists unchanged and give empty lists or zero otherwise.
jst::Value output_value(const ir::Output& out, const jst::Pipeline& pipe,
                        const jst::ValueInputs& in);
std::vector<jst::Value> candidate_outputs(const ir::Program& p, const Candidate& c,
                                          const jst::ValueInputs& in);

// Observed output values of a post-state produced by heap::run.
std::vector<jst::Value> observed_outputs(const ir::Program& p, const heap::ProgramState& post);

// The post-state the candidate assigns to a pre-state: in-place targets get
// their elements replaced, a returned list is a fresh list.
heap::ProgramState apply_candidate(const ir::Program& p, const Candidate& c,
                                   const heap::ProgramState& pre);

// Variables compared between the original and the candidate post-states.
heap::EquivSpec equiv_spec(const ir::Program& p, const heap::ProgramState& pre);

// `term => target` lines in output order.
std::string candidate_text(const ir::Program& p, const Candidate& c);
std::string output_target(const ir::Output& out);

// Builds a candidate from parsed lines; each output must appear once.
// Invariants are derived as by derive_invariants.
Candidate candidate_from_lines(const ir::Program& p, const std::vector<jst::PipelineLine>& lines);
Candidate parse_candidate(const ir::Program& p, std::string_view text);

}  // namespace streamline::vcgen
