#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "streamline/frontend/ir.hpp"
#include "streamline/heap/state.hpp"

namespace streamline::heap {

inline constexpr std::size_t kDefaultFuel = 10000;

class Machine;

// Read-only view of the interpreter at a loop head or loop exit.
class LoopView {
 public:
  LoopView(const Machine& m, int loop, bool entry) : m_(m), loop_(loop), entry_(entry) {}

  int loop() const { return loop_; }
  // True on the first arrival at the head from outside the loop.
  bool entry() const { return entry_; }
  std::optional<std::int32_t> scalar(ir::Slot slot) const;
  std::vector<std::int32_t> list(ir::Slot slot) const;
  void list(ir::Slot slot, std::vector<std::int32_t>& out) const;
  // Elements consumed by an iterator traversal, or the index variable.
  std::optional<std::int32_t> progress(const ir::Traversal& t) const;

 private:
  const Machine& m_;
  int loop_;
  bool entry_;
};

class TraceObserver {
 public:
  virtual ~TraceObserver() = default;
  // Returning false stops the run; the result then has status Normal and
  // the state at the point of interruption.
  virtual bool on_loop_head(const LoopView& view) = 0;
  virtual bool on_loop_exit(const LoopView& view) = 0;
};

// Executes the method on a pre-state. Java ArrayList semantics: iterators
// are fail-fast, indices are bounds checked, int arithmetic wraps.
ProgramState run(const ir::Program& p, const ProgramState& s0, std::size_t fuel = kDefaultFuel);

ProgramState run_traced(const ir::Program& p, const ProgramState& s0, std::size_t fuel,
                        TraceObserver& observer);

}  // namespace streamline::heap
