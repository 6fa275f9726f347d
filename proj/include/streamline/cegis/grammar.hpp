#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "streamline/frontend/ir.hpp"
#include "streamline/heap/enumerate.hpp"
#include "streamline/jst/pipeline.hpp"
#include "streamline/vcgen/counterexample.hpp"
#include "streamline/vcgen/verify.hpp"

namespace streamline::cegis {

struct SearchConfig {
  int max_pipeline_len = 4;
  std::vector<std::int32_t> constant_pool;  // empty: derived from the program
  int ga_population = 2000;
  double ga_replacement_rate = 0.15;
  double ga_mutation_rate = 0.01;
  int ga_generations = 100;  // per race, before the GA reports no progress
  bool ga_enabled = true;
  double timeout_seconds = 300;
  std::uint64_t seed = 0;
  heap::Bounds bounds;
  vcgen::Mode mode = vcgen::Mode::Equivalence;
  std::size_t fuel = heap::kDefaultFuel;

  // Throws std::invalid_argument on rates outside [0,1], a population
  // below 2 or a negative length or timeout.
  void validate() const;
};

// Values probed when deduplicating predicates by truth table.
inline constexpr std::int32_t kProbeLo = -256;
inline constexpr std::int32_t kProbeHi = 256;

// The closed grammar of stages, terminals and lambdas for one program.
class Grammar {
 public:
  Grammar(const ir::Program& p, const SearchConfig& cfg);

  // Constants ordered 0, 1, -1, 2, -2, ...
  const std::vector<std::int32_t>& constants() const { return constants_; }
  const std::vector<jst::Predicate>& predicates() const { return predicates_; }
  const std::vector<jst::Mapper>& mappers() const { return mappers_; }
  const std::vector<jst::Count>& counts() const { return counts_; }
  const std::vector<std::string>& lists() const { return lists_; }

  // Every stage instance in enumeration order: filter, map, sorted, skip,
  // limit, append, concat.
  const std::vector<jst::Stage>& stages() const { return stages_; }
  // Terminals producing an int or a boolean.
  const std::vector<jst::Terminal>& int_terminals() const { return int_terminals_; }
  const std::vector<jst::Terminal>& bool_terminals() const { return bool_terminals_; }
  const std::vector<jst::Terminal>& terminals(ir::OutputKind kind) const {
    return kind == ir::OutputKind::Boolean ? bool_terminals_ : int_terminals_;
  }

 private:
  std::vector<std::int32_t> constants_;
  std::vector<jst::Predicate> predicates_;
  std::vector<jst::Mapper> mappers_;
  std::vector<jst::Count> counts_;
  std::vector<std::string> lists_;
  std::vector<jst::Stage> stages_;
  std::vector<jst::Terminal> int_terminals_;
  std::vector<jst::Terminal> bool_terminals_;
};

std::vector<std::int32_t> default_constant_pool(const ir::Program& p, const heap::Bounds& b);

// Counterexample pre-states collected so far, with the original's outputs
// on each. No two entries serialize identically.
class CexSet {
 public:
  explicit CexSet(const ir::Program& p) : p_(&p) {}

  // False if an equivalent state is already present.
  bool add(const vcgen::Counterexample& cex);
  bool contains(const heap::ProgramState& pre) const;
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

  const std::vector<vcgen::Counterexample>& entries() const { return entries_; }
  const std::vector<jst::ValueInputs>& inputs() const { return inputs_; }
  // expected()[state][output]
  const std::vector<std::vector<jst::Value>>& expected() const { return expected_; }

 private:
  const ir::Program* p_;
  std::vector<vcgen::Counterexample> entries_;
  std::vector<std::string> keys_;
  std::vector<jst::ValueInputs> inputs_;
  std::vector<std::vector<jst::Value>> expected_;
};

// Number of counterexamples on which every output of the candidate agrees
// with the original.
std::size_t matched(const ir::Program& p, const vcgen::Candidate& c, const CexSet& cex);
bool consistent(const ir::Program& p, const vcgen::Candidate& c, const CexSet& cex);

// Pipelines made only of traversal plumbing, with no declarative operator.
bool excluded(const jst::Pipeline& pipe);

}  // namespace streamline::cegis
