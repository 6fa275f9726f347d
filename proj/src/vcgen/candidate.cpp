#include "streamline/vcgen/candidate.hpp"

#include <set>

namespace streamline::vcgen {

int Candidate::length() const {
  int n = 0;
  for (const auto& [name, pipe] : post) n += pipe.length();
  return n;
}

namespace {

bool is_list_param(const ir::Program& p, std::string_view name) {
  ir::Slot s = p.find(name);
  if (s == ir::kNoSlot) return false;
  const auto& v = p.vars[static_cast<std::size_t>(s)];
  return v.is_param && v.kind == ir::VarKind::List;
}

bool is_int_param(const ir::Program& p, std::string_view name) {
  ir::Slot s = p.find(name);
  if (s == ir::kNoSlot) return false;
  const auto& v = p.vars[static_cast<std::size_t>(s)];
  return v.is_param && v.kind == ir::VarKind::Int;
}

void check_count(const ir::Program& p, const jst::Count& c) {
  if (c.kind == jst::Count::Kind::SizeOf && !is_list_param(p, c.name)) {
    throw ShapeMismatch("size of unknown list " + c.name);
  }
  if (c.kind == jst::Count::Kind::Scalar && !is_int_param(p, c.name)) {
    throw ShapeMismatch("unknown int parameter " + c.name);
  }
}

}  // namespace

void check_shape(const ir::Program& p, const Candidate& c) {
  for (const auto& [name, pipe] : c.post) {
    if (p.output(name) == nullptr) throw ShapeMismatch("no output named " + name);
  }
  for (const auto& o : p.outputs) {
    auto it = c.post.find(o.name);
    if (it == c.post.end()) throw ShapeMismatch("missing pipeline for " + output_target(o));
    const jst::Pipeline& pipe = it->second;
    if (pipe.trivial()) {
      if (!pipe.stages.empty() || pipe.terminal) {
        throw ShapeMismatch("trivial pipeline with stages for " + output_target(o));
      }
      continue;
    }
    if (!is_list_param(p, pipe.source)) throw ShapeMismatch("unknown source list " + pipe.source);
    if (!pipe.cut.empty()) throw ShapeMismatch("final-state pipeline may not be cut");
    for (const auto& s : pipe.stages) {
      if (s.kind == jst::StageKind::Skip || s.kind == jst::StageKind::Limit) check_count(p, s.count);
      if (s.kind == jst::StageKind::Concat && !is_list_param(p, s.other)) {
        throw ShapeMismatch("unknown list " + s.other);
      }
    }
    bool boolean = pipe.terminal && pipe.terminal->boolean();
    switch (o.kind) {
      case ir::OutputKind::InPlaceList:
      case ir::OutputKind::FreshList:
        if (pipe.terminal) throw ShapeMismatch(output_target(o) + " needs a list-valued pipeline");
        break;
      case ir::OutputKind::Int:
        if (!pipe.terminal || boolean) {
          throw ShapeMismatch(output_target(o) + " needs an int-valued pipeline");
        }
        break;
      case ir::OutputKind::Boolean:
        if (!boolean) throw ShapeMismatch(output_target(o) + " needs a boolean-valued pipeline");
        break;
    }
  }
}

jst::ValueInputs inputs_of(const ir::Program& p, const heap::ProgramState& pre) {
  jst::ValueInputs in;
  for (ir::Slot s : p.params) {
    const auto& v = p.vars[static_cast<std::size_t>(s)];
    if (v.kind == ir::VarKind::List) {
      in.list_names.push_back(v.name);
      in.lists.push_back(pre.heap.values_of(v.name));
    } else {
      in.scalar_names.push_back(v.name);
      in.scalars.push_back(pre.scalar(v.name).value_or(0));
    }
  }
  return in;
}

jst::Value output_value(const ir::Output& out, const jst::Pipeline& pipe,
                        const jst::ValueInputs& in) {
  if (pipe.trivial()) {
    jst::Value v;
    if (out.kind == ir::OutputKind::InPlaceList) v.list = in.list(out.name);
    return v;
  }
  return jst::evaluate(pipe, in);
}

std::vector<jst::Value> candidate_outputs(const ir::Program& p, const Candidate& c,
                                          const jst::ValueInputs& in) {
  std::vector<jst::Value> out;
  out.reserve(p.outputs.size());
  for (const auto& o : p.outputs) out.push_back(output_value(o, c.post.at(o.name), in));
  return out;
}

std::vector<jst::Value> observed_outputs(const ir::Program& p, const heap::ProgramState& post) {
  std::vector<jst::Value> out;
  out.reserve(p.outputs.size());
  for (const auto& o : p.outputs) {
    jst::Value v;
    if (ir::is_list(o.kind)) {
      if (post.heap.has(o.name)) v.list = post.heap.values_of(o.name);
    } else {
      v.scalar = post.scalar(ir::kReturnName).value_or(0);
    }
    out.push_back(std::move(v));
  }
  return out;
}

heap::ProgramState apply_candidate(const ir::Program& p, const Candidate& c,
                                   const heap::ProgramState& pre) {
  jst::ValueInputs in = inputs_of(p, pre);
  std::vector<jst::Value> values = candidate_outputs(p, c, in);
  heap::ProgramState post;
  post.heap = pre.heap;
  for (std::size_t i = 0; i < p.outputs.size(); ++i) {
    const ir::Output& o = p.outputs[i];
    switch (o.kind) {
      case ir::OutputKind::InPlaceList:
        post.heap.assign(post.heap.ref(o.name), values[i].list);
        break;
      case ir::OutputKind::FreshList:
        post.heap.bind(ir::kReturnName, post.heap.make_list(values[i].list));
        break;
      case ir::OutputKind::Int:
      case ir::OutputKind::Boolean:
        post.set_scalar(ir::kReturnName, values[i].scalar);
        break;
    }
  }
  return post;
}

heap::EquivSpec equiv_spec(const ir::Program& p, const heap::ProgramState& pre) {
  heap::EquivSpec spec;
  for (ir::Slot s : p.list_params()) {
    const std::string& name = p.vars[static_cast<std::size_t>(s)].name;
    spec.refs.push_back(name);
    std::string shadow = heap::shadow_name(name);
    if (pre.heap.has(shadow)) spec.refs.push_back(shadow);
  }
  if (p.return_type == frontend::TypeKind::List) {
    spec.refs.emplace_back(ir::kReturnName);
  } else if (p.return_type != frontend::TypeKind::Void) {
    spec.scalars.emplace_back(ir::kReturnName);
  }
  return spec;
}

std::string output_target(const ir::Output& out) {
  return out.display.empty() ? out.name : out.display;
}

std::string candidate_text(const ir::Program& p, const Candidate& c) {
  std::string out;
  for (const auto& o : p.outputs) {
    auto it = c.post.find(o.name);
    std::string term;
    if (it == c.post.end() || it->second.trivial()) {
      switch (o.kind) {
        case ir::OutputKind::InPlaceList: term = "unchanged"; break;
        case ir::OutputKind::FreshList: term = "[]"; break;
        default: term = "0"; break;
      }
    } else {
      term = it->second.text();
    }
    out += term + " => " + output_target(o) + "\n";
  }
  return out;
}

Candidate candidate_from_lines(const ir::Program& p, const std::vector<jst::PipelineLine>& lines) {
  Candidate c;
  for (const auto& line : lines) {
    const ir::Output* match = nullptr;
    for (const auto& o : p.outputs) {
      if (line.target == o.name || line.target == o.display) match = &o;
    }
    if (match == nullptr) throw ShapeMismatch("no output named " + line.target);
    if (!c.post.emplace(match->name, line.pipeline).second) {
      throw ShapeMismatch("two pipelines for " + line.target);
    }
  }
  check_shape(p, c);
  c.inv = derive_invariants(p, c.post);
  return c;
}

Candidate parse_candidate(const ir::Program& p, std::string_view text) {
  return candidate_from_lines(p, jst::parse_pipeline_text(text));
}

}  // namespace streamline::vcgen
