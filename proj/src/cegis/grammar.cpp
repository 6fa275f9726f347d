#include "streamline/cegis/grammar.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace streamline::cegis {

void SearchConfig::validate() const {
  auto rate = [](double r, const char* what) {
    if (!(r >= 0.0 && r <= 1.0)) throw std::invalid_argument(std::string(what) + " must be in [0,1]");
  };
  rate(ga_replacement_rate, "gaReplacementRate");
  rate(ga_mutation_rate, "gaMutationRate");
  if (ga_population < 2) throw std::invalid_argument("gaPopulation must be at least 2");
  if (ga_generations < 0) throw std::invalid_argument("gaGenerations must be nonnegative");
  if (max_pipeline_len < 0) throw std::invalid_argument("maxPipelineLen must be nonnegative");
  if (timeout_seconds < 0) throw std::invalid_argument("timeout must be nonnegative");
  if (bounds.max_len < 0 || bounds.values.empty()) throw std::invalid_argument("empty bounds");
}

std::vector<std::int32_t> default_constant_pool(const ir::Program& p, const heap::Bounds& b) {
  std::set<std::int32_t> pool(b.values.begin(), b.values.end());
  pool.insert(p.literals.begin(), p.literals.end());
  for (int n = 0; n <= b.max_len; ++n) pool.insert(n);
  std::vector<std::int32_t> out(pool.begin(), pool.end());
  std::stable_sort(out.begin(), out.end(), [](std::int32_t a, std::int32_t b) {
    auto mag = [](std::int32_t v) { return v < 0 ? -static_cast<std::int64_t>(v) : v; };
    if (mag(a) != mag(b)) return mag(a) < mag(b);
    return a > b;
  });
  return out;
}

namespace {

constexpr jst::CmpOp kOps[] = {jst::CmpOp::Gt, jst::CmpOp::Ge, jst::CmpOp::Lt,
                               jst::CmpOp::Le, jst::CmpOp::Eq, jst::CmpOp::Ne};

std::vector<bool> truth_table(const jst::Predicate& p) {
  std::vector<bool> t;
  t.reserve(kProbeHi - kProbeLo + 1);
  for (std::int32_t v = kProbeLo; v <= kProbeHi; ++v) t.push_back(p.eval(v));
  return t;
}

std::vector<jst::Predicate> build_predicates(const std::vector<std::int32_t>& pool) {
  std::vector<jst::Atom> atoms;
  for (std::int32_t c : pool) {
    for (jst::CmpOp op : kOps) atoms.push_back({op, c, 0});
  }
  for (std::int32_t k : {2, 3}) {
    for (std::int32_t r = 0; r < k; ++r) {
      for (std::int32_t rr : {r, -r}) {
        if (rr == 0 && r != 0) continue;
        atoms.push_back({jst::CmpOp::Eq, rr, k});
        atoms.push_back({jst::CmpOp::Ne, rr, k});
      }
    }
  }
  std::vector<jst::Predicate> out;
  std::set<std::vector<bool>> seen;
  std::vector<bool> all_true(kProbeHi - kProbeLo + 1, true);
  std::vector<bool> all_false(kProbeHi - kProbeLo + 1, false);
  seen.insert(all_true);
  auto offer = [&](jst::Predicate p) {
    auto t = truth_table(p);
    if (t == all_false) return;
    if (seen.insert(std::move(t)).second) out.push_back(std::move(p));
  };
  for (const auto& a : atoms) offer(jst::Predicate{{a}});
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    for (std::size_t j = i + 1; j < atoms.size(); ++j) offer(jst::Predicate{{atoms[i], atoms[j]}});
  }
  return out;
}

std::vector<jst::Mapper> build_mappers(const std::vector<std::int32_t>& pool) {
  std::vector<jst::Mapper> out;
  auto offer = [&](std::int32_t a, std::int32_t b) {
    jst::Mapper m{a, b};
    if (m.identity()) return;
    if (std::find(out.begin(), out.end(), m) == out.end()) out.push_back(m);
  };
  for (std::int32_t a : pool) {
    if (a != 0) offer(a, 0);
  }
  for (std::int32_t b : pool) {
    if (b != 0) offer(1, b);
  }
  for (std::int32_t a : pool) {
    for (std::int32_t b : pool) {
      if (a != 0 && b != 0) offer(a, b);
    }
  }
  for (std::int32_t b : pool) offer(0, b);
  return out;
}

}  // namespace

Grammar::Grammar(const ir::Program& p, const SearchConfig& cfg) {
  constants_ = cfg.constant_pool.empty() ? default_constant_pool(p, cfg.bounds) : cfg.constant_pool;
  predicates_ = build_predicates(constants_);
  mappers_ = build_mappers(constants_);
  for (ir::Slot s : p.list_params()) lists_.push_back(p.vars[static_cast<std::size_t>(s)].name);
  for (std::int32_t c : constants_) {
    if (c >= 0) counts_.push_back(jst::Count::literal(c));
  }
  for (const auto& l : lists_) counts_.push_back(jst::Count::size_of(l));
  for (ir::Slot s : p.scalar_params()) {
    const auto& v = p.vars[static_cast<std::size_t>(s)];
    if (v.kind == ir::VarKind::Int) counts_.push_back(jst::Count::scalar(v.name));
  }

  for (const auto& pr : predicates_) {
    jst::Stage s;
    s.kind = jst::StageKind::Filter;
    s.pred = pr;
    stages_.push_back(s);
  }
  for (const auto& m : mappers_) {
    jst::Stage s;
    s.kind = jst::StageKind::Map;
    s.mapper = m;
    stages_.push_back(s);
  }
  stages_.push_back(jst::Stage{jst::StageKind::Sorted, {}, {}, {}, 0, {}});
  for (auto kind : {jst::StageKind::Skip, jst::StageKind::Limit}) {
    for (const auto& c : counts_) {
      if (c.kind == jst::Count::Kind::Literal && c.value == 0) continue;
      jst::Stage s;
      s.kind = kind;
      s.count = c;
      stages_.push_back(s);
    }
  }
  for (std::int32_t c : constants_) {
    jst::Stage s;
    s.kind = jst::StageKind::Append;
    s.value = c;
    stages_.push_back(s);
  }
  for (const auto& l : lists_) {
    jst::Stage s;
    s.kind = jst::StageKind::Concat;
    s.other = l;
    stages_.push_back(s);
  }

  for (jst::AccumulatorKind acc : {jst::AccumulatorKind::Sum, jst::AccumulatorKind::Product,
                                   jst::AccumulatorKind::Min, jst::AccumulatorKind::Max}) {
    for (std::int32_t id : constants_) {
      jst::Terminal t;
      t.kind = jst::TerminalKind::Reduce;
      t.acc = {acc};
      t.identity = id;
      int_terminals_.push_back(t);
    }
  }
  for (auto kind : {jst::TerminalKind::Min, jst::TerminalKind::Max, jst::TerminalKind::Count}) {
    jst::Terminal t;
    t.kind = kind;
    int_terminals_.push_back(t);
  }
  for (auto kind : {jst::TerminalKind::AnyMatch, jst::TerminalKind::AllMatch}) {
    for (const auto& pr : predicates_) {
      jst::Terminal t;
      t.kind = kind;
      t.pred = pr;
      bool_terminals_.push_back(t);
    }
  }
}

bool CexSet::add(const vcgen::Counterexample& cex) {
  std::string key = vcgen::state_key(cex.pre);
  if (std::find(keys_.begin(), keys_.end(), key) != keys_.end()) return false;
  keys_.push_back(std::move(key));
  entries_.push_back(cex);
  inputs_.push_back(vcgen::inputs_of(*p_, cex.pre));
  expected_.push_back(vcgen::observed_outputs(*p_, cex.expected));
  return true;
}

bool CexSet::contains(const heap::ProgramState& pre) const {
  std::string key = vcgen::state_key(pre);
  return std::find(keys_.begin(), keys_.end(), key) != keys_.end();
}

std::size_t matched(const ir::Program& p, const vcgen::Candidate& c, const CexSet& cex) {
  std::size_t n = 0;
  for (std::size_t i = 0; i < cex.size(); ++i) {
    bool ok = true;
    for (std::size_t o = 0; o < p.outputs.size() && ok; ++o) {
      try {
        ok = vcgen::output_value(p.outputs[o], c.post.at(p.outputs[o].name), cex.inputs()[i]) ==
             cex.expected()[i][o];
      } catch (const jst::JstError&) {
        ok = false;
      }
    }
    if (ok) ++n;
  }
  return n;
}

bool consistent(const ir::Program& p, const vcgen::Candidate& c, const CexSet& cex) {
  return matched(p, c, cex) == cex.size();
}

bool excluded(const jst::Pipeline& pipe) {
  return !pipe.trivial() && pipe.stages.empty() && !pipe.terminal;
}

}  // namespace streamline::cegis
