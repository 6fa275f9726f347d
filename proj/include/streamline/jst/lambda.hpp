#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace streamline::jst {

enum class CmpOp { Gt, Ge, Lt, Le, Eq, Ne };

const char* to_string(CmpOp op);
bool compare(CmpOp op, std::int32_t a, std::int32_t b);

// v OP c, or (v % modulus) OP c when modulus != 0. Java remainder semantics.
struct Atom {
  CmpOp op = CmpOp::Gt;
  std::int32_t constant = 0;
  std::int32_t modulus = 0;

  bool eval(std::int32_t v) const;
  friend bool operator==(const Atom&, const Atom&) = default;
};

// Conjunction of at most two atoms; no atoms means `true`.
struct Predicate {
  std::vector<Atom> atoms;

  bool eval(std::int32_t v) const {
    for (const auto& a : atoms) {
      if (!a.eval(v)) return false;
    }
    return true;
  }
  std::string text(std::string_view var) const;
  friend bool operator==(const Predicate&, const Predicate&) = default;
};

// v -> scale * v + offset, wrapping.
struct Mapper {
  std::int32_t scale = 1;
  std::int32_t offset = 0;

  std::int32_t eval(std::int32_t v) const {
    return static_cast<std::int32_t>(static_cast<std::uint32_t>(scale) *
                                         static_cast<std::uint32_t>(v) +
                                     static_cast<std::uint32_t>(offset));
  }
  bool identity() const { return scale == 1 && offset == 0; }
  std::string text(std::string_view var) const;
  friend bool operator==(const Mapper&, const Mapper&) = default;
};

enum class AccumulatorKind { Sum, Product, Min, Max };

struct Accumulator {
  AccumulatorKind kind = AccumulatorKind::Sum;

  std::int32_t eval(std::int32_t a, std::int32_t b) const;
  std::string text() const;
  friend bool operator==(const Accumulator&, const Accumulator&) = default;
};

using Lambda = std::variant<Predicate, Mapper, Accumulator>;

std::string lambda_text(const Lambda& fn, std::string_view var = "v");

}  // namespace streamline::jst
