#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace streamline::heap {

using NodeId = std::int32_t;
inline constexpr NodeId kNull = -1;

// A heap node. List objects are header nodes whose successor is the first
// element; element nodes carry a data label. Every node has outdegree <= 1.
struct Node {
  std::int32_t value = 0;
  NodeId next = kNull;
  bool header = false;
};

class MissingBinding : public std::runtime_error {
 public:
  explicit MissingBinding(std::string_view name)
      : std::runtime_error("no binding for " + std::string(name)) {}
};

// Graph of singly linked nodes plus the reference map from variable names
// to nodes. A value type: copies are independent.
class Heap {
 public:
  NodeId make_node(std::int32_t value, NodeId next);
  NodeId make_list();
  NodeId make_list(std::span<const std::int32_t> values);

  const Node& at(NodeId id) const { return nodes_[static_cast<std::size_t>(id)]; }
  Node& at(NodeId id) { return nodes_[static_cast<std::size_t>(id)]; }
  std::size_t node_count() const { return nodes_.size(); }
  void reserve(std::size_t nodes, std::size_t refs = 0) {
    nodes_.reserve(nodes);
    refs_.reserve(refs);
  }

  void bind(std::string_view name, NodeId id);
  void unbind(std::string_view name);
  std::optional<NodeId> lookup(std::string_view name) const;
  NodeId ref(std::string_view name) const;  // throws MissingBinding
  bool has(std::string_view name) const { return lookup(name).has_value(); }
  const std::vector<std::pair<std::string, NodeId>>& refs() const { return refs_; }

  // First element of the segment denoted by a reference: the successor of
  // a list header, the node itself otherwise.
  NodeId position(NodeId id) const {
    if (id == kNull) return kNull;
    const Node& n = at(id);
    return n.header ? n.next : id;
  }

  std::vector<std::int32_t> values(NodeId list) const;
  void values(NodeId list, std::vector<std::int32_t>& out) const;  // reuses `out`
  std::vector<std::int32_t> values_of(std::string_view name) const {
    return values(ref(name));
  }
  std::size_t length(NodeId list) const;

  // Replace the elements of a list in place with fresh nodes.
  void assign(NodeId list, std::span<const std::int32_t> values);

 private:
  std::vector<Node> nodes_;
  std::vector<std::pair<std::string, NodeId>> refs_;
};

}  // namespace streamline::heap
