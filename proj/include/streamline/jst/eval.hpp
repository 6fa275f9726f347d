#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>

#include "streamline/heap/heap.hpp"
#include "streamline/jst/op.hpp"

namespace streamline::jst {

enum class JstErrorKind { IllFormedSegment, MissingBinding, ArityMismatch, IndexOutOfRange };

const char* to_string(JstErrorKind kind);

class JstError : public std::runtime_error {
 public:
  JstError(JstErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}
  JstErrorKind kind() const { return kind_; }

 private:
  JstErrorKind kind_;
};

struct Env {
  std::map<std::string, std::int32_t, std::less<>> scalars;
  std::map<std::string, heap::Heap, std::less<>> heaps;
};

struct OpResult {
  heap::Heap heap;
  std::optional<std::int32_t> value;  // queries; booleans are 0/1
};

// Checks operand counts and lambda kinds against the opcode signature.
void validate(const JstOp& op);

// Applies one operation. The input heap is taken by value and never
// observed to change; constructive operations only add nodes reachable from
// their result reference. min/max of an empty segment yield INT32_MAX and
// INT32_MIN, standing in for +inf and -inf.
OpResult eval_op(const JstOp& op, heap::Heap h, const Env& env);

// Values of the segment [x, y) of a heap.
std::vector<std::int32_t> segment_values(const heap::Heap& h, std::string_view x,
                                         std::string_view y);

}  // namespace streamline::jst
