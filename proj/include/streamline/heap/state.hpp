#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "streamline/heap/heap.hpp"

namespace streamline::heap {

enum class Status { Normal, Exception, OutOfFuel };

enum class Fault {
  IndexOutOfBounds,
  NoSuchElement,
  IllegalState,
  ConcurrentModification,
  Arithmetic,
};

const char* to_string(Status status);
const char* to_string(Fault fault);

struct ProgramState {
  std::vector<std::pair<std::string, std::int32_t>> scalars;
  Heap heap;
  Status status = Status::Normal;
  std::optional<Fault> fault;

  std::optional<std::int32_t> scalar(std::string_view name) const;
  void set_scalar(std::string_view name, std::int32_t value);
  std::string describe() const;
};

// Name of the external reference that aliases list parameter `list` in the
// aliased variant of an enumerated state.
std::string shadow_name(std::string_view list);
bool is_shadow_name(std::string_view name);

}  // namespace streamline::heap
