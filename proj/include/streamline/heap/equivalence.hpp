#pragma once

#include <span>
#include <string>
#include <vector>

#include "streamline/heap/state.hpp"

namespace streamline::heap {

// The shared program variables compared between two states.
struct EquivSpec {
  std::vector<std::string> refs;
  std::vector<std::string> scalars;
};

// Isomorphism of the subgraphs reachable from the named references: a
// bijection between reachable nodes that preserves data labels, successor
// edges and the reference map. A name bound in neither heap is ignored.
bool heap_equiv(const Heap& a, const Heap& b, std::span<const std::string> refs);

bool state_equiv(const ProgramState& a, const ProgramState& b, const EquivSpec& spec);

}  // namespace streamline::heap
