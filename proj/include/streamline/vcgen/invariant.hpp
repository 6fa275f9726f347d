#pragma once

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "streamline/frontend/ir.hpp"
#include "streamline/heap/interpreter.hpp"
#include "streamline/jst/pipeline.hpp"

namespace streamline::vcgen {

// The variable observed for an output equals its pipeline over the part of
// the source consumed so far. When the output is the source list mutated in
// place, the unconsumed remainder follows unchanged.
struct CutFact {
  std::size_t output = 0;  // index into ir::Program::outputs
  ir::Slot observed = ir::kNoSlot;
  jst::Pipeline pipeline;
  ir::Traversal traversal;
  bool remainder = false;
};

// list[0..k) is sorted and no element of it exceeds an element of list[k..).
struct SortedPrefixFact {
  ir::Slot list = ir::kNoSlot;
  ir::Traversal traversal;
};

// list.get(var) is the minimum of list[i..j), i and j the progress of the
// outer and inner traversal.
struct SegmentMinFact {
  ir::Slot list = ir::kNoSlot;
  ir::Slot var = ir::kNoSlot;
  ir::Traversal outer;
  ir::Traversal inner;
};

using Fact = std::variant<CutFact, SortedPrefixFact, SegmentMinFact>;

struct Invariant {
  int loop = 0;
  std::vector<Fact> facts;
};

// One invariant per loop. Outputs whose source is not traversed by a loop
// contribute no fact to it.
std::map<int, Invariant> derive_invariants(const ir::Program& p,
                                           const std::map<std::string, jst::Pipeline>& post);

// Empty when the fact holds at the view; a description of the violation
// otherwise. `pre` are the pipeline inputs of the pre-state.
std::optional<std::string> violation(const ir::Program& p, const Fact& f,
                                     const heap::LoopView& view, const jst::ValueInputs& pre);
std::optional<std::string> violation(const ir::Program& p, const Invariant& inv,
                                     const heap::LoopView& view, const jst::ValueInputs& pre);

std::string fact_text(const ir::Program& p, const Fact& f);
std::string invariant_text(const ir::Program& p, const Invariant& inv);

}  // namespace streamline::vcgen
