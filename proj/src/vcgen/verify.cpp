#include "streamline/vcgen/verify.hpp"

#include <algorithm>

namespace streamline::vcgen {

const char* to_string(Mode mode) {
  return mode == Mode::Equivalence ? "equivalence" : "invariants";
}

const char* to_string(Outcome outcome) {
  switch (outcome) {
    case Outcome::Pass: return "Pass";
    case Outcome::Fail: return "Fail";
    case Outcome::NotRefactorable: return "NotRefactorable";
    case Outcome::Timeout: return "Timeout";
  }
  return "?";
}

bool canonical_shape(const heap::Heap& h, const heap::EquivSpec& spec) {
  std::vector<heap::NodeId> heads;
  std::vector<char> seen(h.node_count(), 0);
  for (const auto& name : spec.refs) {
    auto id = h.lookup(name);
    if (!id) return false;
    if (heap::is_shadow_name(name)) {
      std::string_view base = std::string_view(name).substr(0, name.size() - 6);
      auto target = h.lookup(base);
      if (!target || *target != *id) return false;
      continue;
    }
    if (*id == heap::kNull || !h.at(*id).header) return false;
    heads.push_back(*id);
    for (heap::NodeId n = *id; n != heap::kNull; n = h.at(n).next) {
      auto& mark = seen[static_cast<std::size_t>(n)];
      if (mark) return false;
      mark = 1;
      if (n != *id && h.at(n).header) return false;
    }
  }
  return true;
}

namespace {

class VcObserver : public heap::TraceObserver {
 public:
  VcObserver(const ir::Program& p, const Candidate& c, const jst::ValueInputs& pre)
      : p_(p), c_(c), pre_(pre) {}

  bool on_loop_head(const heap::LoopView& view) override {
    if (view.entry()) stack_.push_back(view.loop());
    check(view, view.entry() ? VcKind::Base : VcKind::Inductive);
    return true;
  }
  bool on_loop_exit(const heap::LoopView& view) override {
    check(view, VcKind::Exit);
    if (!stack_.empty()) stack_.pop_back();
    if (p_.loops[static_cast<std::size_t>(view.loop())].parent < 0) last_exit_ = view.loop();
    return true;
  }

  // Loop whose Exit condition covers the final state.
  int final_loop() const {
    if (!stack_.empty()) return stack_.back();
    return last_exit_;
  }
  const std::optional<VC>& failed() const { return failed_; }
  const std::string& detail() const { return detail_; }

 private:
  void check(const heap::LoopView& view, VcKind kind) {
    if (failed_) return;
    auto it = c_.inv.find(view.loop());
    if (it == c_.inv.end()) return;
    if (auto v = violation(p_, it->second, view, pre_)) {
      failed_ = VC{kind, view.loop(), {}};
      detail_ = *v;
    }
  }

  const ir::Program& p_;
  const Candidate& c_;
  const jst::ValueInputs& pre_;
  std::vector<int> stack_;
  int last_exit_ = -1;
  std::optional<VC> failed_;
  std::string detail_;
};

// Checks pre-states one at a time, reusing buffers between states.
class StateChecker {
 public:
  StateChecker(const ir::Program& p, const Candidate& c, Mode mode, std::size_t fuel, bool trace)
      : p_(p), c_(c), mode_(mode), fuel_(fuel),
        trace_((mode == Mode::Invariants || trace) && !p.loops.empty()) {
    for (ir::Slot s : p.params) {
      const auto& v = p.vars[static_cast<std::size_t>(s)];
      if (v.kind == ir::VarKind::List) {
        in_.list_names.push_back(v.name);
        in_.lists.emplace_back();
      } else {
        in_.scalar_names.push_back(v.name);
        in_.scalars.push_back(0);
      }
    }
    for (const auto& o : p.outputs) {
      pipes_.push_back(&c.post.at(o.name));
    }
    for (ir::Slot s : p.list_params()) {
      const std::string& name = p.vars[static_cast<std::size_t>(s)].name;
      if (p.output(name) == nullptr) untouched_.push_back(name);
    }
  }

  StateCheck check(const heap::ProgramState& pre) {
    load(pre);
    StateCheck out;
    std::optional<VcObserver> obs;
    if (trace_) {
      obs.emplace(p_, c_, in_);
      out.post = heap::run_traced(p_, pre, fuel_, *obs);
    } else {
      out.post = heap::run(p_, pre, fuel_);
    }
    if (out.post.status != heap::Status::Normal) {
      out.kind = StateCheck::Kind::Fault;
      out.failed_vc = "EndToEnd";
      out.detail = out.post.status == heap::Status::OutOfFuel
                       ? "original ran out of fuel"
                       : std::string("original raised ") + heap::to_string(*out.post.fault);
      return out;
    }
    if (obs && obs->failed()) {
      out.vc_failed = obs->failed()->label();
      out.vc_detail = obs->detail();
    }
    bool match = matches(pre, out.post);
    if (!match && obs && out.vc_failed.empty()) {
      out.vc_failed = VC{VcKind::Exit, obs->final_loop(), {}}.label();
      out.vc_detail = "final states differ";
    }
    if (mode_ == Mode::Invariants && !out.vc_failed.empty()) {
      out.kind = StateCheck::Kind::Mismatch;
      out.failed_vc = out.vc_failed;
      out.detail = out.vc_detail;
    } else if (!match) {
      out.kind = StateCheck::Kind::Mismatch;
      out.failed_vc = mode_ == Mode::Invariants ? VC{VcKind::Exit, -1, {}}.label() : "EndToEnd";
      out.detail = "final states differ";
    }
    return out;
  }

  bool matches(const heap::ProgramState& pre, const heap::ProgramState& post) {
    for (std::size_t i = 0; i < p_.outputs.size(); ++i) {
      const ir::Output& o = p_.outputs[i];
      try {
        want_ = output_value(o, *pipes_[i], in_);
      } catch (const jst::JstError&) {
        return false;
      }
      if (ir::is_list(o.kind)) {
        auto id = post.heap.lookup(o.name);
        if (!id) return false;
        post.heap.values(*id, got_);
        if (got_ != want_.list) return false;
      } else if (post.scalar(ir::kReturnName).value_or(0) != want_.scalar) {
        return false;
      }
    }
    for (const auto& name : untouched_) {
      auto id = post.heap.lookup(name);
      if (!id) return false;
      post.heap.values(*id, got_);
      if (got_ != in_.list(name)) return false;
    }
    return canonical_shape(post.heap, spec(pre));
  }

  void load(const heap::ProgramState& pre) {
    for (std::size_t i = 0; i < in_.list_names.size(); ++i) {
      pre.heap.values(pre.heap.ref(in_.list_names[i]), in_.lists[i]);
    }
    for (std::size_t i = 0; i < in_.scalar_names.size(); ++i) {
      in_.scalars[i] = pre.scalar(in_.scalar_names[i]).value_or(0);
    }
  }

 private:
  const heap::EquivSpec& spec(const heap::ProgramState& pre) {
    bool aliased = false;
    for (const auto& [name, id] : pre.heap.refs()) aliased = aliased || heap::is_shadow_name(name);
    auto& slot = aliased ? aliased_spec_ : plain_spec_;
    if (!slot) slot = equiv_spec(p_, pre);
    return *slot;
  }

  const ir::Program& p_;
  const Candidate& c_;
  Mode mode_;
  std::size_t fuel_;
  bool trace_;
  jst::ValueInputs in_;
  std::vector<const jst::Pipeline*> pipes_;
  std::vector<std::string> untouched_;
  std::optional<heap::EquivSpec> plain_spec_;
  std::optional<heap::EquivSpec> aliased_spec_;
  jst::Value want_;
  std::vector<std::int32_t> got_;
};

bool expired(const VerifyOptions& opts) {
  if (opts.stop.stop_requested()) return true;
  return opts.deadline && std::chrono::steady_clock::now() >= *opts.deadline;
}

Verdict run_checks(const ir::Program& p, const Candidate& c, Mode mode,
                   const VerifyOptions& opts) {
  heap::StateSpace space(heap::param_specs(p), opts.bounds);
  bool track = mode == Mode::Equivalence && opts.track_invariants;
  StateChecker checker(p, c, mode, opts.fuel, track);
  Verdict verdict;
  verdict.invariants_tracked = track || mode == Mode::Invariants;
  auto report = [&](std::uint64_t index, const heap::ProgramState& pre, const StateCheck& r) {
    verdict.cex = make_counterexample(p, c, pre, index, r);
    if (r.kind == StateCheck::Kind::Fault) {
      verdict.outcome = Outcome::NotRefactorable;
      verdict.status = r.post.status;
      verdict.fault = r.post.fault;
    } else {
      verdict.outcome = Outcome::Fail;
    }
    return verdict;
  };
  auto note_vc = [&](std::uint64_t index, const heap::ProgramState& pre, const StateCheck& r) {
    if (!track || verdict.vc_failure || r.vc_failed.empty()) return;
    StateCheck v = r;
    v.failed_vc = r.vc_failed;
    v.detail = r.vc_detail;
    verdict.vc_failure = make_counterexample(p, c, pre, index, v);
  };
  bool pairs = space.aliased_variants();
  std::uint64_t n = space.base_size();
  for (std::uint64_t b = 0; b < n; ++b) {
    if ((b & 255) == 0 && expired(opts)) {
      verdict.outcome = Outcome::Timeout;
      return verdict;
    }
    // The aliased variant only adds external references, so a pass on it
    // implies a pass on the plain state.
    std::uint64_t index = pairs ? 2 * b + 1 : b;
    heap::ProgramState pre = space.at(index);
    StateCheck r = checker.check(pre);
    ++verdict.checked;
    if (r.kind == StateCheck::Kind::Ok) {
      if (!r.vc_failed.empty() && !verdict.vc_failure) {
        if (pairs) {
          heap::ProgramState plain = space.at(2 * b);
          StateCheck r0 = checker.check(plain);
          if (!r0.vc_failed.empty()) {
            note_vc(2 * b, plain, r0);
            continue;
          }
        }
        note_vc(index, pre, r);
      }
      continue;
    }
    if (pairs) {
      heap::ProgramState plain = space.at(2 * b);
      StateCheck r0 = checker.check(plain);
      ++verdict.checked;
      if (r0.kind != StateCheck::Kind::Ok) return report(2 * b, plain, r0);
      note_vc(2 * b, plain, r0);
    }
    return report(index, pre, r);
  }
  return verdict;
}

}  // namespace

bool outputs_match(const ir::Program& p, const Candidate& c, const heap::ProgramState& pre,
                   const heap::ProgramState& post) {
  StateChecker checker(p, c, Mode::Equivalence, heap::kDefaultFuel, false);
  checker.load(pre);
  return checker.matches(pre, post);
}

StateCheck check_state(const ir::Program& p, const Candidate& c, const heap::ProgramState& pre,
                       Mode mode, std::size_t fuel, bool trace) {
  StateChecker checker(p, c, mode, fuel, trace);
  return checker.check(pre);
}

Counterexample make_counterexample(const ir::Program& p, const Candidate& c,
                                   const heap::ProgramState& pre, std::uint64_t index,
                                   const StateCheck& check) {
  Counterexample cex;
  cex.index = index;
  cex.pre = pre;
  cex.failed_vc = check.failed_vc;
  cex.detail = check.detail;
  cex.expected = check.post;
  try {
    cex.actual = apply_candidate(p, c, pre);
  } catch (const jst::JstError& e) {
    cex.actual = pre;
    cex.actual.status = heap::Status::Exception;
    cex.detail += std::string("; candidate: ") + e.what();
  }
  return cex;
}

Verdict check_end_to_end(const ir::Program& p, const Candidate& c, const VerifyOptions& opts) {
  check_shape(p, c);
  return run_checks(p, c, Mode::Equivalence, opts);
}

Verdict check_vcs(const ir::Program& p, const Candidate& c, const std::vector<VC>& vcs,
                  const VerifyOptions& opts) {
  if (vcs.empty()) throw ShapeMismatch("no verification conditions");
  return run_checks(p, c, Mode::Invariants, opts);
}

Verdict verify(const ir::Program& p, const Candidate& c, Mode mode, const VerifyOptions& opts) {
  if (mode == Mode::Invariants) return check_vcs(p, c, make_vcs(p, c), opts);
  return check_end_to_end(p, c, opts);
}

}  // namespace streamline::vcgen
