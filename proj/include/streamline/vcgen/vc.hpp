#pragma once

#include <string>
#include <vector>

#include "streamline/frontend/ir.hpp"
#include "streamline/vcgen/candidate.hpp"

namespace streamline::vcgen {

enum class VcKind { Base, Inductive, Exit };

const char* to_string(VcKind kind);

// A verification condition over one enumerated pre-state. Base: the
// invariant holds on first arrival at the loop head. Inductive: it holds
// again after each body step, assuming it held before (and, for an outer
// loop, that inner loops exited with their invariants). Exit: the
// invariant holds when the loop is left, and after the last loop the
// final state satisfies the candidate's final-state formula.
struct VC {
  VcKind kind = VcKind::Exit;
  int loop = -1;  // -1 for loop-free programs
  std::string formula;

  std::string label() const;
};

// Three conditions per loop in loop order, or a single Exit condition for
// a loop-free program. Throws ShapeMismatch if the candidate does not fit.
std::vector<VC> make_vcs(const ir::Program& p, const Candidate& c);

}  // namespace streamline::vcgen
