#include "streamline/heap/enumerate.hpp"

#include <algorithm>
#include <stdexcept>

namespace streamline::heap {

namespace {

std::uint64_t power(std::uint64_t base, int exp) {
  std::uint64_t r = 1;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

// All length tuples with the given total, each entry in [0, max], in
// lexicographic order.
void tuples(std::size_t k, int total, int max, std::vector<int>& prefix,
            std::vector<std::vector<int>>& out) {
  if (prefix.size() == k) {
    if (total == 0) out.push_back(prefix);
    return;
  }
  for (int len = 0; len <= std::min(total, max); ++len) {
    prefix.push_back(len);
    tuples(k, total - len, max, prefix, out);
    prefix.pop_back();
  }
}

}  // namespace

Bounds Bounds::range(int max_len, std::int32_t lo, std::int32_t hi, bool aliasing) {
  if (lo > hi) throw std::invalid_argument("empty value range");
  Bounds b;
  b.max_len = max_len;
  b.values.clear();
  for (std::int64_t v = lo; v <= hi; ++v) b.values.push_back(static_cast<std::int32_t>(v));
  b.aliasing = aliasing;
  return b;
}

std::string Bounds::describe() const {
  std::string text = "maxLen=" + std::to_string(max_len) + " values=";
  if (values.empty()) return text + "{}";
  text += std::to_string(values.front()) + ".." + std::to_string(values.back());
  return text + (aliasing ? " aliasing=on" : " aliasing=off");
}

std::vector<ParamSpec> param_specs(const ir::Program& p) {
  std::vector<ParamSpec> out;
  for (ir::Slot s : p.params) {
    out.push_back({p.vars[s].name, p.vars[s].kind == ir::VarKind::List});
  }
  return out;
}

StateSpace::StateSpace(std::vector<ParamSpec> params, Bounds bounds)
    : params_(std::move(params)), bounds_(std::move(bounds)) {
  if (bounds_.values.empty()) throw std::invalid_argument("empty value set");
  std::sort(bounds_.values.begin(), bounds_.values.end());
  bounds_.values.erase(std::unique(bounds_.values.begin(), bounds_.values.end()),
                       bounds_.values.end());
  for (const auto& p : params_) (p.is_list ? list_count_ : scalar_count_)++;
  std::uint64_t v = bounds_.values.size();
  std::uint64_t scalar_combos = power(v, static_cast<int>(scalar_count_));
  int max_total = bounds_.max_len * static_cast<int>(list_count_);
  for (int total = 0; total <= max_total; ++total) {
    std::vector<std::vector<int>> level;
    std::vector<int> prefix;
    tuples(list_count_, total, bounds_.max_len, prefix, level);
    for (auto& lengths : level) {
      Block b;
      b.lengths = std::move(lengths);
      b.offset = base_size_;
      b.count = power(v, total) * scalar_combos;
      base_size_ += b.count;
      blocks_.push_back(std::move(b));
    }
  }
}

ProgramState StateSpace::at(std::uint64_t index) const {
  if (index >= size()) throw std::out_of_range("state index");
  bool aliased = false;
  if (aliased_variants()) {
    aliased = index & 1;
    index >>= 1;
  }
  auto block = std::upper_bound(blocks_.begin(), blocks_.end(), index,
                                [](std::uint64_t i, const Block& b) { return i < b.offset; });
  --block;
  std::uint64_t local = index - block->offset;
  const std::uint64_t v = bounds_.values.size();

  int total = 0;
  for (int len : block->lengths) total += len;
  // Digits, most significant first: list elements in order, then scalars.
  std::size_t digits = static_cast<std::size_t>(total) + scalar_count_;
  std::vector<std::int32_t> seq(digits);
  for (std::size_t d = digits; d-- > 0;) {
    seq[d] = bounds_.values[local % v];
    local /= v;
  }

  ProgramState s;
  std::size_t cursor = 0;
  std::size_t list_index = 0;
  std::size_t scalar_cursor = static_cast<std::size_t>(total);
  s.heap.reserve(static_cast<std::size_t>(total) + list_count_ + 8, 2 * list_count_ + 1);
  for (const auto& p : params_) {
    if (p.is_list) {
      int len = block->lengths[list_index++];
      std::span<const std::int32_t> elems(seq.data() + cursor, static_cast<std::size_t>(len));
      cursor += static_cast<std::size_t>(len);
      NodeId h = s.heap.make_list(elems);
      s.heap.bind(p.name, h);
    } else {
      s.set_scalar(p.name, seq[scalar_cursor++]);
    }
  }
  if (aliased) {
    for (const auto& p : params_) {
      if (p.is_list) s.heap.bind(shadow_name(p.name), s.heap.ref(p.name));
    }
  }
  return s;
}

std::vector<ProgramState> enumerate_states(const std::vector<ParamSpec>& params,
                                           const Bounds& bounds) {
  StateSpace space(params, bounds);
  std::vector<ProgramState> out;
  out.reserve(space.size());
  for (std::uint64_t i = 0; i < space.size(); ++i) out.push_back(space.at(i));
  return out;
}

}  // namespace streamline::heap
