#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stop_token>
#include <utility>

#include "streamline/cegis/grammar.hpp"
#include "streamline/vcgen/candidate.hpp"

namespace streamline::cegis {

enum class SearchStatus { Found, Exhausted, Stopped };

const char* to_string(SearchStatus s);

struct SearchOutcome {
  SearchStatus status = SearchStatus::Exhausted;
  std::optional<vcgen::Candidate> candidate;
  std::uint64_t explored = 0;  // partial pipelines expanded
};

// Deterministic enumeration of the grammar. A candidate of total length l
// splits l over the outputs; each output's pipeline is the first in
// enumeration order that matches the original on every counterexample.
// Partial pipelines with the same intermediate values on all
// counterexamples have the same completions, so only the first is expanded.
class Enumerator {
 public:
  Enumerator(const ir::Program& p, const Grammar& g) : p_(p), g_(g) {}

  SearchOutcome search(const CexSet& cex, int length, std::stop_token stop = {});

  // First matching pipeline for one output at an exact length.
  std::optional<jst::Pipeline> first_pipeline(std::size_t output, int length, const CexSet& cex,
                                              std::stop_token stop, bool& stopped);

 private:
  const ir::Program& p_;
  const Grammar& g_;
  std::size_t cached_for_ = static_cast<std::size_t>(-1);
  std::map<std::pair<std::size_t, int>, std::optional<jst::Pipeline>> cache_;
  std::uint64_t explored_ = 0;
};

SearchOutcome search_enumerative(const ir::Program& p, const Grammar& g, const CexSet& cex,
                                 int length, std::stop_token stop = {});

// Splits of `total` over `parts` nonnegative lengths, first part largest
// first.
std::vector<std::vector<int>> compositions(int total, std::size_t parts);

}  // namespace streamline::cegis
