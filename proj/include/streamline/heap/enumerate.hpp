#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "streamline/frontend/ir.hpp"
#include "streamline/heap/state.hpp"

namespace streamline::heap {

struct Bounds {
  int max_len = 4;
  std::vector<std::int32_t> values = {-3, -2, -1, 0, 1, 2, 3};
  bool aliasing = true;

  static Bounds range(int max_len, std::int32_t lo, std::int32_t hi, bool aliasing = true);
  std::string describe() const;
};

struct ParamSpec {
  std::string name;
  bool is_list = true;
};

std::vector<ParamSpec> param_specs(const ir::Program& p);

// The bounded universe of pre-states, in a fixed order: by total number of
// list elements, then by the tuple of list lengths, then by contents with
// values in ascending order. With aliasing on, every state is followed by a
// variant in which each list parameter is also reachable through an
// external reference (a caller-held alias).
class StateSpace {
 public:
  StateSpace(std::vector<ParamSpec> params, Bounds bounds);

  std::uint64_t size() const { return base_size_ * (aliased_variants() ? 2 : 1); }
  std::uint64_t base_size() const { return base_size_; }
  bool aliased_variants() const { return bounds_.aliasing && list_count_ > 0; }
  bool is_aliased(std::uint64_t index) const { return aliased_variants() && (index & 1); }

  ProgramState at(std::uint64_t index) const;

  const std::vector<ParamSpec>& params() const { return params_; }
  const Bounds& bounds() const { return bounds_; }

 private:
  struct Block {
    std::vector<int> lengths;
    std::uint64_t offset = 0;
    std::uint64_t count = 0;
  };

  std::vector<ParamSpec> params_;
  Bounds bounds_;
  std::size_t list_count_ = 0;
  std::size_t scalar_count_ = 0;
  std::vector<Block> blocks_;
  std::uint64_t base_size_ = 0;
};

std::vector<ProgramState> enumerate_states(const std::vector<ParamSpec>& params,
                                           const Bounds& bounds);

}  // namespace streamline::heap
