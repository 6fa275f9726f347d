#include "streamline/vcgen/invariant.hpp"

#include <algorithm>
#include <climits>

namespace streamline::vcgen {

namespace {

const ir::Traversal* traversal_over(const ir::Loop& loop, ir::Slot list) {
  for (const auto& t : loop.traversals) {
    if (t.list == list) return &t;
  }
  return nullptr;
}

bool has_sorted(const jst::Pipeline& pipe) {
  return std::any_of(pipe.stages.begin(), pipe.stages.end(),
                     [](const jst::Stage& s) { return s.kind == jst::StageKind::Sorted; });
}

// Variable assigned from the traversal variable in the loop body, as in
// `m = j`.
ir::Slot assigned_from(const std::vector<ir::Stmt>& block, ir::Slot var) {
  for (const auto& s : block) {
    if (s.kind == ir::StmtKind::Assign && s.args.size() == 1 &&
        s.args[0].kind == ir::ExprKind::Var && s.args[0].slot == var) {
      return s.target;
    }
    if (s.kind == ir::StmtKind::If) {
      ir::Slot t = assigned_from(s.then_block, var);
      if (t == ir::kNoSlot) t = assigned_from(s.else_block, var);
      if (t != ir::kNoSlot) return t;
    }
  }
  return ir::kNoSlot;
}

std::size_t clamp_progress(std::optional<std::int32_t> k, std::size_t size) {
  if (!k || *k < 0) return 0;
  return std::min(static_cast<std::size_t>(*k), size);
}

std::string show(const std::vector<std::int32_t>& v) {
  std::string out = "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i > 0) out += ", ";
    out += std::to_string(v[i]);
  }
  return out + "]";
}

const std::string& var_name(const ir::Program& p, ir::Slot s) {
  return p.vars[static_cast<std::size_t>(s)].name;
}

}  // namespace

std::map<int, Invariant> derive_invariants(const ir::Program& p,
                                           const std::map<std::string, jst::Pipeline>& post) {
  std::map<int, Invariant> out;
  for (const auto& loop : p.loops) {
    Invariant inv;
    inv.loop = loop.id;
    for (std::size_t i = 0; i < p.outputs.size(); ++i) {
      const ir::Output& o = p.outputs[i];
      auto it = post.find(o.name);
      if (it == post.end() || it->second.trivial() || o.slot == ir::kNoSlot) continue;
      const jst::Pipeline& pipe = it->second;
      ir::Slot src = p.find(pipe.source);
      const ir::Traversal* t = traversal_over(loop, src);
      if (o.kind == ir::OutputKind::InPlaceList && has_sorted(pipe) && src == o.slot) {
        if (t == nullptr || t->kind != ir::Traversal::Kind::Index) continue;
        if (loop.parent < 0) {
          inv.facts.emplace_back(SortedPrefixFact{src, *t});
          continue;
        }
        const ir::Traversal* outer = traversal_over(p.loops[loop.parent], src);
        ir::Slot var = assigned_from(loop.body, t->var);
        if (outer != nullptr && var != ir::kNoSlot) {
          inv.facts.emplace_back(SegmentMinFact{src, var, *outer, *t});
        }
        continue;
      }
      if (t == nullptr || loop.parent >= 0) continue;
      CutFact f;
      f.output = i;
      f.observed = o.slot;
      f.pipeline = pipe;
      f.pipeline.cut = var_name(p, t->var);
      f.traversal = *t;
      f.remainder = o.kind == ir::OutputKind::InPlaceList && src == o.slot;
      inv.facts.emplace_back(std::move(f));
    }
    out.emplace(loop.id, std::move(inv));
  }
  return out;
}

std::optional<std::string> violation(const ir::Program& p, const Fact& fact,
                                     const heap::LoopView& view, const jst::ValueInputs& pre) {
  if (const auto* f = std::get_if<CutFact>(&fact)) {
    const ir::Output& o = p.outputs[f->output];
    const auto& src = pre.list(f->pipeline.source);
    std::size_t k = clamp_progress(view.progress(f->traversal), src.size());
    thread_local jst::Value want;
    thread_local std::vector<std::int32_t> got;
    try {
      jst::evaluate_into(f->pipeline, pre, k, want);
    } catch (const jst::JstError& e) {
      return std::string("pipeline error: ") + e.what();
    }
    if (ir::is_list(o.kind)) {
      if (f->remainder) {
        want.list.insert(want.list.end(), src.begin() + static_cast<std::ptrdiff_t>(k), src.end());
      }
      view.list(f->observed, got);
      if (got != want.list) {
        return var_name(p, f->observed) + " is " + show(got) + ", expected " + show(want.list);
      }
      return std::nullopt;
    }
    auto value = view.scalar(f->observed);
    if (!value || *value != want.scalar) {
      return var_name(p, f->observed) + " is " + (value ? std::to_string(*value) : "unset") +
             ", expected " + std::to_string(want.scalar);
    }
    return std::nullopt;
  }
  if (const auto* f = std::get_if<SortedPrefixFact>(&fact)) {
    auto xs = view.list(f->list);
    std::size_t k = clamp_progress(view.progress(f->traversal), xs.size());
    if (!std::is_sorted(xs.begin(), xs.begin() + static_cast<std::ptrdiff_t>(k))) {
      return var_name(p, f->list) + " prefix of " + std::to_string(k) + " is not sorted";
    }
    if (k > 0 && k < xs.size()) {
      std::int32_t hi = xs[k - 1];
      std::int32_t lo = *std::min_element(xs.begin() + static_cast<std::ptrdiff_t>(k), xs.end());
      if (hi > lo) return var_name(p, f->list) + " prefix exceeds the remaining elements";
    }
    return std::nullopt;
  }
  const auto& f = std::get<SegmentMinFact>(fact);
  auto xs = view.list(f.list);
  std::size_t i = clamp_progress(view.progress(f.outer), xs.size());
  std::size_t j = clamp_progress(view.progress(f.inner), xs.size());
  auto var = view.scalar(f.var);
  if (i >= j) return std::nullopt;
  if (!var || *var < 0 || static_cast<std::size_t>(*var) >= xs.size()) {
    return var_name(p, f.var) + " is not an index of " + var_name(p, f.list);
  }
  std::int32_t lo = *std::min_element(xs.begin() + static_cast<std::ptrdiff_t>(i),
                                      xs.begin() + static_cast<std::ptrdiff_t>(j));
  if (xs[static_cast<std::size_t>(*var)] != lo) {
    return var_name(p, f.list) + ".get(" + var_name(p, f.var) + ") is not the segment minimum " +
           std::to_string(lo);
  }
  return std::nullopt;
}

std::optional<std::string> violation(const ir::Program& p, const Invariant& inv,
                                     const heap::LoopView& view, const jst::ValueInputs& pre) {
  for (const auto& f : inv.facts) {
    if (auto v = violation(p, f, view, pre)) return v;
  }
  return std::nullopt;
}

std::string fact_text(const ir::Program& p, const Fact& fact) {
  if (const auto* f = std::get_if<CutFact>(&fact)) {
    std::string rhs = f->pipeline.text();
    if (f->remainder) rhs += " ++ " + f->pipeline.source + "[" + f->pipeline.cut + "..)";
    return var_name(p, f->observed) + " == " + rhs;
  }
  if (const auto* f = std::get_if<SortedPrefixFact>(&fact)) {
    std::string l = var_name(p, f->list);
    std::string k = var_name(p, f->traversal.var);
    return "sorted(" + l + "[.." + k + ")) && max(" + l + "[.." + k + ")) <= min(" + l + "[" +
           k + "..))";
  }
  const auto& f = std::get<SegmentMinFact>(fact);
  std::string l = var_name(p, f.list);
  return l + ".get(" + var_name(p, f.var) + ") == min(" + l + "[" + var_name(p, f.outer.var) +
         ".." + var_name(p, f.inner.var) + "))";
}

std::string invariant_text(const ir::Program& p, const Invariant& inv) {
  if (inv.facts.empty()) return "true";
  std::string out;
  for (const auto& f : inv.facts) {
    if (!out.empty()) out += " && ";
    out += fact_text(p, f);
  }
  return out;
}

}  // namespace streamline::vcgen
