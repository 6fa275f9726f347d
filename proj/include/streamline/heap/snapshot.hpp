#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "streamline/heap/enumerate.hpp"
#include "streamline/heap/state.hpp"

namespace streamline::heap {

// {refs: {name: id|null}, nodes: [{id, value, next}]}. Nodes are numbered in
// first-reachable order from the references sorted by name, so equivalent
// heaps serialize identically. List header nodes carry "list": true instead
// of a value.
nlohmann::json heap_snapshot(const Heap& h);
nlohmann::json state_snapshot(const ProgramState& s);

// Heap-constructor sequence that rebuilds a pre-state, for example
// {"new h list", "add h list 0 1", "assign n 2", "alias h list@alias list"}.
std::vector<std::string> constructors(const ProgramState& s, const std::vector<ParamSpec>& params);
ProgramState from_constructors(const std::vector<std::string>& steps);

}  // namespace streamline::heap
