#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "streamline/heap/enumerate.hpp"
#include "streamline/heap/state.hpp"

namespace streamline::vcgen {

// A pre-state on which the candidate and the original disagree.
struct Counterexample {
  std::uint64_t index = 0;  // position in the state enumeration
  heap::ProgramState pre;
  std::string failed_vc = "EndToEnd";
  std::string detail;
  heap::ProgramState expected;  // original program
  heap::ProgramState actual;    // candidate
};

// Canonical serialization of a pre-state; equal for equivalent states.
std::string state_key(const heap::ProgramState& s);

// {constructors, failedVC, expected, actual}, plus index and detail.
nlohmann::json counterexample_json(const Counterexample& cex,
                                   const std::vector<heap::ParamSpec>& params);

}  // namespace streamline::vcgen
