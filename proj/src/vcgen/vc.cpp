#include "streamline/vcgen/vc.hpp"

namespace streamline::vcgen {

const char* to_string(VcKind kind) {
  switch (kind) {
    case VcKind::Base: return "Base";
    case VcKind::Inductive: return "Inductive";
    case VcKind::Exit: return "Exit";
  }
  return "?";
}

std::string VC::label() const {
  if (loop < 0) return to_string(kind);
  return std::string(to_string(kind)) + "(L" + std::to_string(loop) + ")";
}

namespace {

std::string final_formula(const ir::Program& p, const Candidate& c) {
  std::string out;
  for (const auto& o : p.outputs) {
    if (!out.empty()) out += " && ";
    const jst::Pipeline& pipe = c.post.at(o.name);
    std::string rhs = pipe.trivial() ? (o.kind == ir::OutputKind::InPlaceList ? o.name + "_i"
                                        : ir::is_list(o.kind)                 ? "[]"
                                                                              : "0")
                                     : pipe.text();
    out += output_target(o) + " == " + rhs;
  }
  return out.empty() ? "true" : out;
}

int last_top_level_loop(const ir::Program& p) {
  int last = -1;
  for (const auto& l : p.loops) {
    if (l.parent < 0) last = l.id;
  }
  return last;
}

}  // namespace

std::vector<VC> make_vcs(const ir::Program& p, const Candidate& c) {
  check_shape(p, c);
  for (const auto& l : p.loops) {
    if (c.inv.find(l.id) == c.inv.end()) {
      throw ShapeMismatch("no invariant for loop L" + std::to_string(l.id));
    }
  }
  std::string sf = final_formula(p, c);
  std::vector<VC> out;
  if (p.loops.empty()) {
    out.push_back({VcKind::Exit, -1, "run(h_i) ~ " + sf});
    return out;
  }
  int last = last_top_level_loop(p);
  for (const auto& l : p.loops) {
    std::string inv = l.invariant + "(" + invariant_text(p, c.inv.at(l.id)) + ")";
    std::string guard = ir::print_expr(p, l.guard);
    std::string inner;
    for (const auto& m : p.loops) {
      if (m.parent == l.id) inner += " && " + m.invariant + " on exit";
    }
    out.push_back({VcKind::Base, l.id, "entry(" + l.invariant + ") => " + inv});
    out.push_back({VcKind::Inductive, l.id,
                   inv + " && " + guard + inner + " && T(body) => " + l.invariant + "'"});
    std::string exit = inv + " && !(" + guard + ")";
    out.push_back({VcKind::Exit, l.id, exit + (l.id == last ? " => " + sf : " => " + l.invariant)});
  }
  return out;
}

}  // namespace streamline::vcgen
