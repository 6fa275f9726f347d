#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace streamline::testing {

struct OracleReport {
  std::uint64_t heaps = 0;
  std::uint64_t cases = 0;
  std::uint64_t mismatches = 0;
  std::vector<std::string> opcodes_covered;
  std::vector<std::string> samples;  // first few mismatches
};

// Runs every JST opcode on every heap with up to `max_lists` lists of
// length <= max_len over values lo..hi, plus an iterator into the first
// list, and compares each result with a reference written over plain
// arrays.
OracleReport run_jst_oracle(int max_lists, int max_len, std::int32_t lo, std::int32_t hi);

}  // namespace streamline::testing
