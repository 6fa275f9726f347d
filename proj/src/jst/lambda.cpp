#include "streamline/jst/lambda.hpp"

#include <algorithm>

namespace streamline::jst {

const char* to_string(CmpOp op) {
  switch (op) {
    case CmpOp::Gt: return ">";
    case CmpOp::Ge: return ">=";
    case CmpOp::Lt: return "<";
    case CmpOp::Le: return "<=";
    case CmpOp::Eq: return "==";
    case CmpOp::Ne: return "!=";
  }
  return "?";
}

bool compare(CmpOp op, std::int32_t a, std::int32_t b) {
  switch (op) {
    case CmpOp::Gt: return a > b;
    case CmpOp::Ge: return a >= b;
    case CmpOp::Lt: return a < b;
    case CmpOp::Le: return a <= b;
    case CmpOp::Eq: return a == b;
    case CmpOp::Ne: return a != b;
  }
  return false;
}

bool Atom::eval(std::int32_t v) const {
  if (modulus == 0) return compare(op, v, constant);
  std::int32_t r = modulus == -1 ? 0 : v % modulus;
  return compare(op, r, constant);
}

std::string Predicate::text(std::string_view var) const {
  if (atoms.empty()) return "true";
  std::string out;
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    if (i > 0) out += " && ";
    const Atom& a = atoms[i];
    out += std::string(var);
    if (a.modulus != 0) out += " % " + std::to_string(a.modulus);
    out += " " + std::string(to_string(a.op)) + " " + std::to_string(a.constant);
  }
  return out;
}

std::string Mapper::text(std::string_view var) const {
  std::string v(var);
  std::string lin;
  if (scale == 0) return std::to_string(offset);
  if (scale == 1) {
    lin = v;
  } else if (scale == -1) {
    lin = "-" + v;
  } else {
    lin = std::to_string(scale) + "*" + v;
  }
  if (offset > 0) return lin + " + " + std::to_string(offset);
  if (offset < 0 && offset != INT32_MIN) return lin + " - " + std::to_string(-offset);
  if (offset == INT32_MIN) return lin + " + " + std::to_string(offset);
  return lin;
}

std::int32_t Accumulator::eval(std::int32_t a, std::int32_t b) const {
  auto ua = static_cast<std::uint32_t>(a);
  auto ub = static_cast<std::uint32_t>(b);
  switch (kind) {
    case AccumulatorKind::Sum: return static_cast<std::int32_t>(ua + ub);
    case AccumulatorKind::Product: return static_cast<std::int32_t>(ua * ub);
    case AccumulatorKind::Min: return std::min(a, b);
    case AccumulatorKind::Max: return std::max(a, b);
  }
  return 0;
}

std::string Accumulator::text() const {
  switch (kind) {
    case AccumulatorKind::Sum: return "(a, b) -> a + b";
    case AccumulatorKind::Product: return "(a, b) -> a * b";
    case AccumulatorKind::Min: return "Integer::min";
    case AccumulatorKind::Max: return "Integer::max";
  }
  return "?";
}

std::string lambda_text(const Lambda& fn, std::string_view var) {
  std::string v(var);
  if (const auto* p = std::get_if<Predicate>(&fn)) return v + " -> " + p->text(var);
  if (const auto* m = std::get_if<Mapper>(&fn)) return v + " -> " + m->text(var);
  return std::get<Accumulator>(fn).text();
}

}  // namespace streamline::jst
