#include "streamline/heap/snapshot.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

namespace streamline::heap {

nlohmann::json heap_snapshot(const Heap& h) {
  auto refs = h.refs();
  std::sort(refs.begin(), refs.end());
  std::map<NodeId, int> number;
  std::vector<NodeId> order;
  for (const auto& [name, id] : refs) {
    for (NodeId n = id; n != kNull && !number.count(n); n = h.at(n).next) {
      number[n] = static_cast<int>(order.size());
      order.push_back(n);
    }
  }
  nlohmann::json out;
  out["refs"] = nlohmann::json::object();
  for (const auto& [name, id] : refs) {
    out["refs"][name] = id == kNull ? nlohmann::json(nullptr) : nlohmann::json(number[id]);
  }
  out["nodes"] = nlohmann::json::array();
  for (NodeId n : order) {
    const Node& node = h.at(n);
    nlohmann::json j;
    j["id"] = number[n];
    if (node.header) {
      j["list"] = true;
    } else {
      j["value"] = node.value;
    }
    j["next"] = node.next == kNull ? nlohmann::json(nullptr) : nlohmann::json(number[node.next]);
    out["nodes"].push_back(std::move(j));
  }
  return out;
}

nlohmann::json state_snapshot(const ProgramState& s) {
  nlohmann::json out;
  out["scalars"] = nlohmann::json::object();
  for (const auto& [name, v] : s.scalars) out["scalars"][name] = v;
  out["heap"] = heap_snapshot(s.heap);
  out["status"] = to_string(s.status);
  if (s.fault) out["fault"] = to_string(*s.fault);
  return out;
}

std::vector<std::string> constructors(const ProgramState& s, const std::vector<ParamSpec>& params) {
  std::vector<std::string> out;
  for (const auto& p : params) {
    if (!p.is_list) continue;
    out.push_back("new h " + p.name);
    auto vals = s.heap.values_of(p.name);
    for (std::size_t i = 0; i < vals.size(); ++i) {
      out.push_back("add h " + p.name + " " + std::to_string(i) + " " + std::to_string(vals[i]));
    }
  }
  for (const auto& p : params) {
    if (p.is_list) continue;
    out.push_back("assign " + p.name + " " + std::to_string(s.scalar(p.name).value_or(0)));
  }
  for (const auto& [name, id] : s.heap.refs()) {
    if (!is_shadow_name(name)) continue;
    for (const auto& p : params) {
      if (p.is_list && s.heap.ref(p.name) == id) {
        out.push_back("alias h " + name + " " + p.name);
        break;
      }
    }
  }
  return out;
}

ProgramState from_constructors(const std::vector<std::string>& steps) {
  ProgramState s;
  std::map<std::string, std::vector<std::int32_t>> lists;
  std::vector<std::string> order;
  std::vector<std::pair<std::string, std::string>> aliases;
  for (const auto& step : steps) {
    std::istringstream in(step);
    std::string op, heap_name, name;
    in >> op;
    if (op == "assign") {
      std::int32_t v;
      in >> name >> v;
      if (!in) throw std::invalid_argument("bad constructor: " + step);
      s.set_scalar(name, v);
      continue;
    }
    in >> heap_name >> name;
    if (op == "new") {
      lists[name];
      order.push_back(name);
    } else if (op == "add") {
      std::size_t index;
      std::int32_t v;
      in >> index >> v;
      auto& l = lists.at(name);
      if (!in || index > l.size()) throw std::invalid_argument("bad constructor: " + step);
      l.insert(l.begin() + static_cast<std::ptrdiff_t>(index), v);
    } else if (op == "alias") {
      std::string target;
      in >> target;
      aliases.emplace_back(name, target);
    } else {
      throw std::invalid_argument("bad constructor: " + step);
    }
  }
  for (const auto& name : order) s.heap.bind(name, s.heap.make_list(lists[name]));
  for (const auto& [shadow, target] : aliases) s.heap.bind(shadow, s.heap.ref(target));
  return s;
}

}  // namespace streamline::heap
