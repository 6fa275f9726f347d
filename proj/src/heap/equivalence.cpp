#include "streamline/heap/equivalence.hpp"

namespace streamline::heap {

bool heap_equiv(const Heap& a, const Heap& b, std::span<const std::string> refs) {
  std::vector<NodeId> ab(a.node_count(), kNull);
  std::vector<NodeId> ba(b.node_count(), kNull);
  for (const auto& name : refs) {
    auto ra = a.lookup(name);
    auto rb = b.lookup(name);
    if (!ra && !rb) continue;
    if (!ra || !rb) return false;
    NodeId x = *ra;
    NodeId y = *rb;
    while (x != kNull || y != kNull) {
      if (x == kNull || y == kNull) return false;
      auto& fx = ab[static_cast<std::size_t>(x)];
      auto& fy = ba[static_cast<std::size_t>(y)];
      if (fx != kNull || fy != kNull) {
        if (fx != y || fy != x) return false;
        break;  // the rest of the chain is already matched
      }
      fx = y;
      fy = x;
      const Node& nx = a.at(x);
      const Node& ny = b.at(y);
      if (nx.header != ny.header) return false;
      if (!nx.header && nx.value != ny.value) return false;
      x = nx.next;
      y = ny.next;
    }
  }
  return true;
}

bool state_equiv(const ProgramState& a, const ProgramState& b, const EquivSpec& spec) {
  if (a.status != b.status) return false;
  if (a.status != Status::Normal) return a.fault == b.fault;
  for (const auto& name : spec.scalars) {
    if (a.scalar(name) != b.scalar(name)) return false;
  }
  return heap_equiv(a.heap, b.heap, spec.refs);
}

}  // namespace streamline::heap
