#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <mutex>
#include <optional>
#include <stop_token>

#include "streamline/cegis/enumerative.hpp"
#include "streamline/cegis/genetic.hpp"

namespace streamline::cegis {

enum class Strategy { Enumerative, Genetic };

const char* to_string(Strategy s);

// Returns the current scheduling quantum; results posted in the same
// quantum count as simultaneous.
using QuantumClock = std::function<std::uint64_t()>;

QuantumClock steady_quantum_clock(std::chrono::milliseconds quantum = std::chrono::milliseconds(10));

// First-writer-wins slot for the race. A genetic result is displaced by an
// enumerative one posted in the same quantum.
class ResultCell {
 public:
  explicit ResultCell(QuantumClock clock) : clock_(std::move(clock)) {}

  // True if the posted candidate is now the winner.
  bool post(Strategy who, vcgen::Candidate c);
  bool has_result() const;
  std::optional<std::pair<Strategy, vcgen::Candidate>> result() const;
  // Quantum of the current result, if any.
  std::optional<std::uint64_t> quantum() const;
  std::uint64_t now() const { return clock_(); }

 private:
  QuantumClock clock_;
  mutable std::mutex mu_;
  std::optional<vcgen::Candidate> candidate_;
  Strategy who_ = Strategy::Enumerative;
  std::uint64_t quantum_ = 0;
};

struct RaceOutcome {
  SearchStatus status = SearchStatus::Exhausted;
  std::optional<vcgen::Candidate> candidate;
  Strategy winner = Strategy::Enumerative;
  std::uint64_t explored = 0;
  int ga_generations = 0;
};

// Runs the enumerative search on the calling thread and, when enabled, the
// genetic search on a worker thread. Only the enumerative search can report
// that a length is exhausted.
RaceOutcome race_searches(Enumerator& enumerator, const ir::Program& p, const Grammar& g,
                          const CexSet& cex, int length, const SearchConfig& cfg,
                          std::stop_token stop = {}, QuantumClock clock = {});

}  // namespace streamline::cegis
