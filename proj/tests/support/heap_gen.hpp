#pragma once

#include <random>

#include "streamline/heap/heap.hpp"

namespace streamline::testing {

// Random graph of outdegree <= 1 over at most `max_nodes` nodes, with
// `refs` bound to random nodes or null, or left unbound. Chains may share
// tails or form cycles.
heap::Heap random_heap(std::mt19937& rng, const std::vector<std::string>& refs, int max_nodes = 6);

// Isomorphic copy: nodes renumbered by a random permutation and an
// unreachable node added.
heap::Heap permuted(const heap::Heap& h, std::mt19937& rng);

}  // namespace streamline::testing
