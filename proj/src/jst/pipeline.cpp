#include "streamline/jst/pipeline.hpp"

#include <algorithm>
#include <climits>

namespace streamline::jst {

std::string Count::text() const {
  switch (kind) {
    case Kind::Literal: return std::to_string(value);
    case Kind::SizeOf: return name + ".size()";
    case Kind::Scalar: return name;
  }
  return "?";
}

std::string Stage::text() const {
  switch (kind) {
    case StageKind::Filter: return "filter(v -> " + pred.text("v") + ")";
    case StageKind::Map: return "map(v -> " + mapper.text("v") + ")";
    case StageKind::Sorted: return "sorted()";
    case StageKind::Skip: return "skip(" + count.text() + ")";
    case StageKind::Limit: return "limit(" + count.text() + ")";
    case StageKind::Append: return "append(" + std::to_string(value) + ")";
    case StageKind::Concat: return "concat(" + other + ")";
  }
  return "?";
}

std::string Terminal::text() const {
  switch (kind) {
    case TerminalKind::Reduce: return "reduce(" + std::to_string(identity) + ", " + acc.text() + ")";
    case TerminalKind::Min: return "min()";
    case TerminalKind::Max: return "max()";
    case TerminalKind::Count: return "count()";
    case TerminalKind::AnyMatch: return "anyMatch(v -> " + pred.text("v") + ")";
    case TerminalKind::AllMatch: return "allMatch(v -> " + pred.text("v") + ")";
  }
  return "?";
}

std::string Pipeline::text() const {
  if (trivial()) return "unchanged";
  std::string out = source;
  if (!cut.empty()) out += "[.." + cut + ")";
  out += ".stream()";
  for (const auto& s : stages) out += "." + s.text();
  if (terminal) out += "." + terminal->text();
  return out;
}

int PipelineTerm::length() const {
  return static_cast<int>(std::count_if(ops.begin(), ops.end(),
                                        [](const JstOp& op) { return !op.plumbing; }));
}

std::string PipelineTerm::text() const {
  std::string out;
  for (const auto& op : ops) {
    if (!out.empty()) out += "; ";
    out += op.text();
  }
  return out;
}

PipelineTerm to_term(const Pipeline& p, std::string_view heap) {
  PipelineTerm term;
  term.source = p.source;
  if (p.trivial()) return term;
  std::string h(heap);
  std::string cur = p.source;
  std::string end = p.cut.empty() ? std::string(kNullRef) : p.cut;
  int fresh = 0;
  auto next_heap = [&]() { return "h" + std::to_string(++fresh); };
  auto next_ref = [&]() { return "$r" + std::to_string(fresh); };

  auto count_arg = [&](const Count& c) -> IntArg {
    switch (c.kind) {
      case Count::Kind::Literal:
        return IntArg(c.value);
      case Count::Kind::Scalar:
        return IntArg(c.name);
      case Count::Kind::SizeOf: {
        JstOp size;
        size.code = Opcode::Size;
        size.heap_in = h;
        size.refs = {c.name, std::string(kNullRef)};
        size.result = "$n" + std::to_string(fresh + 1);
        size.plumbing = true;
        term.ops.push_back(size);
        return IntArg(size.result);
      }
    }
    return IntArg(0);
  };

  auto constructive = [&](Opcode code, std::vector<std::string> refs, std::vector<IntArg> ints,
                          std::optional<Lambda> fn, bool plumbing) {
    JstOp op;
    op.code = code;
    op.heap_in = h;
    op.refs = std::move(refs);
    op.ints = std::move(ints);
    op.fn = std::move(fn);
    op.plumbing = plumbing;
    op.heap_out = next_heap();
    term.ops.push_back(op);
    h = op.heap_out;
  };

  for (const auto& s : p.stages) {
    switch (s.kind) {
      case StageKind::Filter:
        constructive(Opcode::Filter, {cur, end, ""}, {}, Lambda(s.pred), false);
        break;
      case StageKind::Map:
        constructive(Opcode::Map, {cur, end, ""}, {}, Lambda(s.mapper), false);
        break;
      case StageKind::Sorted:
        constructive(Opcode::Sorted, {cur, end, ""}, {}, std::nullopt, false);
        break;
      case StageKind::Skip:
      case StageKind::Limit: {
        IntArg n = count_arg(s.count);
        constructive(s.kind == StageKind::Skip ? Opcode::Skip : Opcode::Limit, {cur, end, ""},
                     {IntArg(0), n}, std::nullopt, false);
        break;
      }
      case StageKind::Append: {
        constructive(Opcode::Copy, {cur, end, ""}, {}, std::nullopt, true);
        term.ops.back().refs[2] = next_ref();
        cur = term.ops.back().refs[2];
        end = std::string(kNullRef);
        JstOp add;
        add.code = Opcode::AddLast;
        add.heap_in = h;
        add.refs = {cur};
        add.ints = {IntArg(s.value)};
        add.heap_out = next_heap();
        term.ops.push_back(add);
        h = add.heap_out;
        continue;
      }
      case StageKind::Concat:
        constructive(Opcode::Concat, {cur, end, s.other, std::string(kNullRef), ""}, {},
                     std::nullopt, false);
        break;
    }
    JstOp& last = term.ops.back();
    last.refs.back() = next_ref();
    cur = last.refs.back();
    end = std::string(kNullRef);
  }

  if (p.terminal) {
    const Terminal& t = *p.terminal;
    JstOp op;
    op.heap_in = h;
    op.refs = {cur, end};
    switch (t.kind) {
      case TerminalKind::Reduce:
        op.code = Opcode::Reduce;
        op.ints = {IntArg(t.identity)};
        op.fn = Lambda(t.acc);
        break;
      case TerminalKind::Min: op.code = Opcode::Min; break;
      case TerminalKind::Max: op.code = Opcode::Max; break;
      case TerminalKind::Count: op.code = Opcode::Size; break;
      case TerminalKind::AnyMatch:
        op.code = Opcode::Exists;
        op.fn = Lambda(t.pred);
        break;
      case TerminalKind::AllMatch:
        op.code = Opcode::Forall;
        op.fn = Lambda(t.pred);
        break;
    }
    op.result = "$v";
    term.ops.push_back(op);
    term.result = op.result;
    term.list_result = false;
    return term;
  }
  if (p.stages.empty()) {
    constructive(Opcode::Copy, {cur, end, "$r0"}, {}, std::nullopt, true);
    cur = "$r0";
  }
  term.result = cur;
  return term;
}

PipelineTerm cut_at_iterator(PipelineTerm term, std::string_view iter) {
  if (term.ops.empty()) return term;
  for (auto& op : term.ops) {
    if (!op.refs.empty() && op.refs[0] == term.source && op.refs.size() >= 2 &&
        op.code != Opcode::Size) {
      op.refs[1] = std::string(iter);
      return term;
    }
    if (op.code == Opcode::Size && !op.plumbing && op.refs[0] == term.source) {
      op.refs[1] = std::string(iter);
      return term;
    }
  }
  throw JstError(JstErrorKind::IllFormedSegment, "NoSourceSegment: term has no source segment");
}

PipelineValue eval_pipeline(const PipelineTerm& term, heap::Heap h0, const Env& env) {
  PipelineValue out;
  Env local = env;
  heap::Heap h = std::move(h0);
  for (const auto& op : term.ops) {
    OpResult r = eval_op(op, std::move(h), local);
    h = std::move(r.heap);
    if (r.value) local.scalars[op.result] = *r.value;
  }
  if (!term.list_result) {
    out.scalar = local.scalars.at(term.result);
  } else {
    out.list = term.result;
  }
  out.heap = std::move(h);
  return out;
}

const std::vector<std::int32_t>& ValueInputs::list(std::string_view name) const {
  for (std::size_t i = 0; i < list_names.size(); ++i) {
    const std::string& n = list_names[i];
    if (n.size() == name.size() && (n.empty() || n[0] == name[0]) && n == name) return lists[i];
  }
  throw JstError(JstErrorKind::MissingBinding, std::string(name));
}

std::int32_t ValueInputs::scalar(std::string_view name) const {
  for (std::size_t i = 0; i < scalar_names.size(); ++i) {
    if (scalar_names[i] == name) return scalars[i];
  }
  throw JstError(JstErrorKind::MissingBinding, std::string(name));
}

namespace {

std::int32_t count_value(const Count& c, const ValueInputs& in) {
  switch (c.kind) {
    case Count::Kind::Literal: return c.value;
    case Count::Kind::SizeOf: return static_cast<std::int32_t>(in.list(c.name).size());
    case Count::Kind::Scalar: return in.scalar(c.name);
  }
  return 0;
}

}  // namespace

void apply_stage(const Stage& s, std::vector<std::int32_t>& seq, const ValueInputs& in) {
  switch (s.kind) {
    case StageKind::Filter:
      std::erase_if(seq, [&](std::int32_t v) { return !s.pred.eval(v); });
      return;
    case StageKind::Map:
      for (auto& v : seq) v = s.mapper.eval(v);
      return;
    case StageKind::Sorted:
      std::stable_sort(seq.begin(), seq.end());
      return;
    case StageKind::Skip:
    case StageKind::Limit: {
      std::int32_t n = count_value(s.count, in);
      if (n < 0) throw JstError(JstErrorKind::IndexOutOfRange, "negative count");
      std::size_t k = std::min<std::size_t>(static_cast<std::size_t>(n), seq.size());
      if (s.kind == StageKind::Skip) {
        seq.erase(seq.begin(), seq.begin() + static_cast<std::ptrdiff_t>(k));
      } else {
        seq.resize(k);
      }
      return;
    }
    case StageKind::Append:
      seq.push_back(s.value);
      return;
    case StageKind::Concat: {
      const auto& other = in.list(s.other);
      seq.insert(seq.end(), other.begin(), other.end());
      return;
    }
  }
}

std::int32_t apply_terminal(const Terminal& t, std::span<const std::int32_t> seq) {
  switch (t.kind) {
    case TerminalKind::Reduce: {
      std::int32_t acc = t.identity;
      for (auto it = seq.rbegin(); it != seq.rend(); ++it) acc = t.acc.eval(*it, acc);
      return acc;
    }
    case TerminalKind::Min:
      return seq.empty() ? INT32_MAX : *std::min_element(seq.begin(), seq.end());
    case TerminalKind::Max:
      return seq.empty() ? INT32_MIN : *std::max_element(seq.begin(), seq.end());
    case TerminalKind::Count:
      return static_cast<std::int32_t>(seq.size());
    case TerminalKind::AnyMatch:
      return std::any_of(seq.begin(), seq.end(), [&](std::int32_t v) { return t.pred.eval(v); });
    case TerminalKind::AllMatch:
      return std::all_of(seq.begin(), seq.end(), [&](std::int32_t v) { return t.pred.eval(v); });
  }
  return 0;
}

Value evaluate(const Pipeline& p, const ValueInputs& in, std::optional<std::size_t> prefix) {
  Value out;
  evaluate_into(p, in, prefix, out);
  return out;
}

void evaluate_into(const Pipeline& p, const ValueInputs& in, std::optional<std::size_t> prefix,
                   Value& out) {
  out.list.clear();
  out.scalar = 0;
  if (p.trivial()) return;
  const auto& src = in.list(p.source);
  std::size_t n = prefix ? std::min(*prefix, src.size()) : src.size();
  out.list.assign(src.begin(), src.begin() + static_cast<std::ptrdiff_t>(n));
  for (const auto& s : p.stages) apply_stage(s, out.list, in);
  if (p.terminal) {
    out.scalar = apply_terminal(*p.terminal, out.list);
    out.list.clear();
  }
}

}  // namespace streamline::jst
