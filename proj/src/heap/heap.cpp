#include "streamline/heap/heap.hpp"

#include <algorithm>

namespace streamline::heap {

NodeId Heap::make_node(std::int32_t value, NodeId next) {
  nodes_.push_back({value, next, false});
  return static_cast<NodeId>(nodes_.size() - 1);
}

NodeId Heap::make_list() {
  nodes_.push_back({0, kNull, true});
  return static_cast<NodeId>(nodes_.size() - 1);
}

NodeId Heap::make_list(std::span<const std::int32_t> values) {
  NodeId first = kNull;
  for (auto it = values.rbegin(); it != values.rend(); ++it) first = make_node(*it, first);
  NodeId h = make_list();
  at(h).next = first;
  return h;
}

void Heap::bind(std::string_view name, NodeId id) {
  for (auto& [n, target] : refs_) {
    if (n == name) {
      target = id;
      return;
    }
  }
  refs_.emplace_back(std::string(name), id);
}

void Heap::unbind(std::string_view name) {
  std::erase_if(refs_, [&](const auto& r) { return r.first == name; });
}

std::optional<NodeId> Heap::lookup(std::string_view name) const {
  for (const auto& [n, target] : refs_) {
    if (n == name) return target;
  }
  return std::nullopt;
}

NodeId Heap::ref(std::string_view name) const {
  auto id = lookup(name);
  if (!id) throw MissingBinding(name);
  return *id;
}

std::vector<std::int32_t> Heap::values(NodeId list) const {
  std::vector<std::int32_t> out;
  for (NodeId n = position(list); n != kNull; n = at(n).next) out.push_back(at(n).value);
  return out;
}

void Heap::values(NodeId list, std::vector<std::int32_t>& out) const {
  out.clear();
  for (NodeId n = position(list); n != kNull; n = at(n).next) out.push_back(at(n).value);
}

std::size_t Heap::length(NodeId list) const {
  std::size_t len = 0;
  for (NodeId n = position(list); n != kNull; n = at(n).next) ++len;
  return len;
}

void Heap::assign(NodeId list, std::span<const std::int32_t> values) {
  NodeId first = kNull;
  for (auto it = values.rbegin(); it != values.rend(); ++it) first = make_node(*it, first);
  at(list).next = first;
}

}  // namespace streamline::heap
