#include "streamline/heap/state.hpp"

#include <sstream>

namespace streamline::heap {

const char* to_string(Status status) {
  switch (status) {
    case Status::Normal: return "Normal";
    case Status::Exception: return "Exception";
    case Status::OutOfFuel: return "OutOfFuel";
  }
  return "?";
}

const char* to_string(Fault fault) {
  switch (fault) {
    case Fault::IndexOutOfBounds: return "IndexOutOfBounds";
    case Fault::NoSuchElement: return "NoSuchElement";
    case Fault::IllegalState: return "IllegalState";
    case Fault::ConcurrentModification: return "ConcurrentModification";
    case Fault::Arithmetic: return "Arithmetic";
  }
  return "?";
}

std::optional<std::int32_t> ProgramState::scalar(std::string_view name) const {
  for (const auto& [n, v] : scalars) {
    if (n == name) return v;
  }
  return std::nullopt;
}

void ProgramState::set_scalar(std::string_view name, std::int32_t value) {
  for (auto& [n, v] : scalars) {
    if (n == name) {
      v = value;
      return;
    }
  }
  scalars.emplace_back(std::string(name), value);
}

std::string ProgramState::describe() const {
  std::ostringstream out;
  bool first = true;
  for (const auto& [name, id] : heap.refs()) {
    if (!first) out << ", ";
    first = false;
    out << name << "=[";
    auto vals = heap.values(id);
    for (std::size_t i = 0; i < vals.size(); ++i) out << (i ? "," : "") << vals[i];
    out << "]";
  }
  for (const auto& [name, v] : scalars) {
    if (!first) out << ", ";
    first = false;
    out << name << "=" << v;
  }
  if (status != Status::Normal) {
    out << (first ? "" : ", ") << to_string(status);
    if (fault) out << "(" << to_string(*fault) << ")";
  }
  return out.str();
}

std::string shadow_name(std::string_view list) { return std::string(list) + "@alias"; }

bool is_shadow_name(std::string_view name) {
  return name.size() > 6 && name.substr(name.size() - 6) == "@alias";
}

}  // namespace streamline::heap
