#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "streamline/jst/lambda.hpp"

namespace streamline::jst {

enum class Opcode {
  Add,
  AddLast,
  Set,
  Get,
  Size,
  Alias,
  Remove,
  RemoveVal,
  Exists,
  Forall,
  Sorted,
  Min,
  Max,
  Filter,
  Map,
  Skip,
  Limit,
  Reduce,
  Concat,
  Copy,
  New,
  EqualLists,
  GetIterator,
};

inline constexpr Opcode kAllOpcodes[] = {
    Opcode::Add,    Opcode::AddLast, Opcode::Set,       Opcode::Get,        Opcode::Size,
    Opcode::Alias,  Opcode::Remove,  Opcode::RemoveVal, Opcode::Exists,     Opcode::Forall,
    Opcode::Sorted, Opcode::Min,     Opcode::Max,       Opcode::Filter,     Opcode::Map,
    Opcode::Skip,   Opcode::Limit,   Opcode::Reduce,    Opcode::Concat,     Opcode::Copy,
    Opcode::New,    Opcode::EqualLists, Opcode::GetIterator};

const char* to_string(Opcode op);

enum class LambdaKind { None, Predicate, Mapper, Accumulator };

// Operand layout of an opcode.
struct Signature {
  std::size_t refs = 0;  // reference operands, in the order of the JST rules
  std::size_t ints = 0;  // integer operands
  LambdaKind lambda = LambdaKind::None;
  bool yields_heap = false;   // returns a new heap
  bool yields_value = false;  // returns an int or boolean
  bool other_heap = false;    // equalLists reads a second heap
};

const Signature& signature(Opcode op);

// An integer operand: a literal, or a scalar bound in the environment.
struct IntArg {
  std::variant<std::int32_t, std::string> v;

  IntArg(std::int32_t literal = 0) : v(literal) {}
  IntArg(std::string name) : v(std::move(name)) {}
  std::string text() const;
};

inline constexpr std::string_view kNullRef = "null";

// One JST operation. Heap-producing operations read `heap_in` and bind the
// result to `heap_out`; queries bind their value to `result`.
struct JstOp {
  Opcode code = Opcode::Copy;
  std::string heap_in;
  std::string heap_out;
  std::string result;
  std::vector<std::string> refs;
  std::vector<IntArg> ints;
  std::optional<Lambda> fn;
  std::string heap_other;
  bool plumbing = false;  // bookkeeping op, not counted as a pipeline stage

  std::string text() const;
};

}  // namespace streamline::jst
