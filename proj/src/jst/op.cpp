#include "streamline/jst/op.hpp"

namespace streamline::jst {

const char* to_string(Opcode op) {
  switch (op) {
    case Opcode::Add: return "add";
    case Opcode::AddLast: return "add_last";
    case Opcode::Set: return "set";
    case Opcode::Get: return "get";
    case Opcode::Size: return "size";
    case Opcode::Alias: return "alias";
    case Opcode::Remove: return "remove";
    case Opcode::RemoveVal: return "removeVal";
    case Opcode::Exists: return "exists";
    case Opcode::Forall: return "forall";
    case Opcode::Sorted: return "sorted";
    case Opcode::Min: return "min";
    case Opcode::Max: return "max";
    case Opcode::Filter: return "filter";
    case Opcode::Map: return "map";
    case Opcode::Skip: return "skip";
    case Opcode::Limit: return "limit";
    case Opcode::Reduce: return "reduce";
    case Opcode::Concat: return "concat";
    case Opcode::Copy: return "copy";
    case Opcode::New: return "new";
    case Opcode::EqualLists: return "equalLists";
    case Opcode::GetIterator: return "getIterator";
  }
  return "?";
}

const Signature& signature(Opcode op) {
  using L = LambdaKind;
  // refs, ints, lambda, heap, value, other heap
  static const Signature kAdd{1, 2, L::None, true, false, false};
  static const Signature kAddLast{1, 1, L::None, true, false, false};
  static const Signature kGet{1, 1, L::None, false, true, false};
  static const Signature kSegmentQuery{2, 0, L::None, false, true, false};
  static const Signature kRemove{1, 0, L::None, true, false, false};
  static const Signature kRemoveVal{2, 1, L::None, true, false, false};
  static const Signature kQuantifier{2, 0, L::Predicate, false, true, false};
  static const Signature kSorted{3, 0, L::None, true, false, false};
  static const Signature kFilter{3, 0, L::Predicate, true, false, false};
  static const Signature kMap{3, 0, L::Mapper, true, false, false};
  static const Signature kCounted{3, 2, L::None, true, false, false};
  static const Signature kReduce{2, 1, L::Accumulator, false, true, false};
  static const Signature kConcat{5, 0, L::None, true, false, false};
  static const Signature kNew{1, 0, L::None, true, false, false};
  static const Signature kEqual{4, 0, L::None, false, true, true};
  static const Signature kIterator{2, 1, L::None, true, false, false};
  switch (op) {
    case Opcode::Add:
    case Opcode::Set: return kAdd;
    case Opcode::AddLast: return kAddLast;
    case Opcode::Get: return kGet;
    case Opcode::Size:
    case Opcode::Alias:
    case Opcode::Min:
    case Opcode::Max: return kSegmentQuery;
    case Opcode::Remove: return kRemove;
    case Opcode::RemoveVal: return kRemoveVal;
    case Opcode::Exists:
    case Opcode::Forall: return kQuantifier;
    case Opcode::Sorted:
    case Opcode::Copy: return kSorted;
    case Opcode::Filter: return kFilter;
    case Opcode::Map: return kMap;
    case Opcode::Skip:
    case Opcode::Limit: return kCounted;
    case Opcode::Reduce: return kReduce;
    case Opcode::Concat: return kConcat;
    case Opcode::New: return kNew;
    case Opcode::EqualLists: return kEqual;
    case Opcode::GetIterator: return kIterator;
  }
  return kNew;
}

std::string IntArg::text() const {
  if (const auto* i = std::get_if<std::int32_t>(&v)) return std::to_string(*i);
  return std::get<std::string>(v);
}

std::string JstOp::text() const {
  const Signature& sig = signature(code);
  std::string out;
  if (sig.yields_heap) out += heap_out + " = ";
  if (sig.yields_value) out += result + " = ";
  out += std::string(to_string(code)) + "(" + heap_in;
  for (const auto& r : refs) out += ", " + r;
  if (code == Opcode::Skip || code == Opcode::Limit) {
    // skip(h, x, y, done, n, ret): counters precede the result reference.
    out = (sig.yields_heap ? heap_out + " = " : "") + std::string(to_string(code)) + "(" +
          heap_in + ", " + refs[0] + ", " + refs[1] + ", " + ints[0].text() + ", " +
          ints[1].text() + ", " + refs[2] + ")";
    return out;
  }
  if (sig.other_heap) {
    out = result + " = equalLists(" + heap_in + ", " + refs[0] + ", " + refs[1] + ", " +
          heap_other + ", " + refs[2] + ", " + refs[3] + ")";
    return out;
  }
  if (code == Opcode::Filter || code == Opcode::Map) {
    return out.substr(0, out.rfind(", ")) + ", " + lambda_text(*fn) + ", " + refs[2] + ")";
  }
  if (code == Opcode::GetIterator) {
    return heap_out + " = getIterator(" + heap_in + ", " + refs[0] + ", " + ints[0].text() +
           ", " + refs[1] + ")";
  }
  for (const auto& i : ints) out += ", " + i.text();
  if (fn) out += ", " + lambda_text(*fn);
  return out + ")";
}

}  // namespace streamline::jst
