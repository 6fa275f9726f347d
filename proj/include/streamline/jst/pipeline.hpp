#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "streamline/heap/heap.hpp"
#include "streamline/jst/eval.hpp"
#include "streamline/jst/lambda.hpp"
#include "streamline/jst/op.hpp"

namespace streamline::jst {

// Argument of skip/limit: a literal, the size of a list, or a scalar.
struct Count {
  enum class Kind { Literal, SizeOf, Scalar };
  Kind kind = Kind::Literal;
  std::int32_t value = 0;
  std::string name;

  static Count literal(std::int32_t v) { return {Kind::Literal, v, {}}; }
  static Count size_of(std::string list) { return {Kind::SizeOf, 0, std::move(list)}; }
  static Count scalar(std::string var) { return {Kind::Scalar, 0, std::move(var)}; }
  std::string text() const;
  friend bool operator==(const Count&, const Count&) = default;
};

enum class StageKind { Filter, Map, Sorted, Skip, Limit, Append, Concat };

struct Stage {
  StageKind kind = StageKind::Filter;
  Predicate pred;
  Mapper mapper;
  Count count;
  std::int32_t value = 0;  // Append
  std::string other;       // Concat

  std::string text() const;
  friend bool operator==(const Stage&, const Stage&) = default;
};

enum class TerminalKind { Reduce, Min, Max, Count, AnyMatch, AllMatch };

struct Terminal {
  TerminalKind kind = TerminalKind::Reduce;
  Predicate pred;
  Accumulator acc;
  std::int32_t identity = 0;

  bool boolean() const {
    return kind == TerminalKind::AnyMatch || kind == TerminalKind::AllMatch;
  }
  std::string text() const;
  friend bool operator==(const Terminal&, const Terminal&) = default;
};

// A stream pipeline over one source list. An empty source is the trivial
// term: the target keeps its value (in-place lists) or gets the empty
// list / zero.
struct Pipeline {
  std::string source;
  std::string cut;  // end of the source segment; empty means the whole list
  std::vector<Stage> stages;
  std::optional<Terminal> terminal;

  bool trivial() const { return source.empty(); }
  int length() const {
    return static_cast<int>(stages.size()) + (terminal ? 1 : 0);
  }
  std::string text() const;
  friend bool operator==(const Pipeline&, const Pipeline&) = default;
};

// A pipeline as a chain of JST operations threaded through heap names.
struct PipelineTerm {
  std::string source;
  std::vector<JstOp> ops;
  std::string result;  // list reference or scalar name; empty for identity
  bool list_result = true;

  int length() const;
  std::string text() const;
};

PipelineTerm to_term(const Pipeline& p, std::string_view heap = "h_i");

// Replaces the end of the source segment (null) by an iterator reference,
// giving the term computed over the consumed prefix. An empty term is
// returned unchanged.
PipelineTerm cut_at_iterator(PipelineTerm term, std::string_view iter);

struct PipelineValue {
  heap::Heap heap;
  std::optional<std::int32_t> scalar;
  std::string list;  // reference bound to the result list
};

PipelineValue eval_pipeline(const PipelineTerm& term, heap::Heap h0, const Env& env);

// Named list contents and scalars for the value-level evaluator.
struct ValueInputs {
  std::vector<std::string> list_names;
  std::vector<std::vector<std::int32_t>> lists;
  std::vector<std::string> scalar_names;
  std::vector<std::int32_t> scalars;

  const std::vector<std::int32_t>& list(std::string_view name) const;
  std::int32_t scalar(std::string_view name) const;
};

struct Value {
  std::vector<std::int32_t> list;
  std::int32_t scalar = 0;
  friend bool operator==(const Value&, const Value&) = default;
};

// Same meaning as eval_pipeline over whole-list segments, computed on value
// sequences. `prefix` restricts the source to its first elements.
Value evaluate(const Pipeline& p, const ValueInputs& in,
               std::optional<std::size_t> prefix = std::nullopt);
void evaluate_into(const Pipeline& p, const ValueInputs& in, std::optional<std::size_t> prefix,
                   Value& out);

// Applies stages to a sequence; throws JstError on a negative count.
void apply_stage(const Stage& s, std::vector<std::int32_t>& seq, const ValueInputs& in);
std::int32_t apply_terminal(const Terminal& t, std::span<const std::int32_t> seq);

}  // namespace streamline::jst
