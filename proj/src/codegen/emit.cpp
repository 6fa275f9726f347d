#include "streamline/codegen/emit.hpp"

#include <climits>
#include <set>

#include "streamline/frontend/ast.hpp"

namespace streamline::codegen {

using jst::Pipeline;
using jst::StageKind;
using jst::TerminalKind;

std::string java_int(std::int32_t v) {
  if (v == INT32_MIN) return "Integer.MIN_VALUE";
  if (v == INT32_MAX) return "Integer.MAX_VALUE";
  return std::to_string(v);
}

namespace {

bool find_first_form(const Pipeline& pipe) {
  if (pipe.terminal || pipe.stages.empty()) return false;
  const jst::Stage& last = pipe.stages.back();
  return last.kind == StageKind::Limit && last.count.kind == jst::Count::Kind::Literal &&
         last.count.value == 1;
}

std::string java_mapper(const jst::Mapper& m, const std::string& v) {
  std::string text = m.text(v);
  if (auto star = text.find('*'); star != std::string::npos) text.replace(star, 1, " * ");
  return text;
}

// Names visible in the emitted method: its own name and the parameters.
class Namer {
 public:
  explicit Namer(const ir::Program& p) {
    taken_.insert(p.name);
    for (const auto& s : p.signature) taken_.insert(s.name);
  }

  std::string fresh(const std::string& base) {
    std::string name = base;
    for (int i = 2; taken_.contains(name); ++i) name = base + std::to_string(i);
    taken_.insert(name);
    return name;
  }

 private:
  std::set<std::string> taken_;
};

struct Imports {
  bool array_list = false;
  bool list = false;
  bool collectors = false;
  bool stream = false;

  std::string header() const {
    std::vector<std::string> names;
    if (array_list) names.push_back("java.util.ArrayList");
    if (list) names.push_back("java.util.List");
    if (collectors) names.push_back("java.util.stream.Collectors");
    if (stream) names.push_back("java.util.stream.Stream");
    std::string out = "// imports:";
    if (names.empty()) return out + " none\n";
    for (std::size_t i = 0; i < names.size(); ++i) out += (i ? ", " : " ") + names[i];
    return out + "\n";
  }
};

class Emitter {
 public:
  Emitter(const ir::Program& p, const vcgen::Candidate& c) : p_(p), c_(c), names_(p) {}

  EmitPlan plan() {
    EmitPlan plan;
    plan.lambda_var = names_.fresh("el");
    std::vector<const ir::Output*> in_place;
    for (const auto& o : p_.outputs) {
      const Pipeline& pipe = pipeline(o);
      if (pipe.trivial() && o.kind == ir::OutputKind::InPlaceList) continue;
      if (!pipe.cut.empty()) throw UntranslatableOp("segment cut in a final-state pipeline");
      if (o.kind == ir::OutputKind::InPlaceList) {
        in_place.push_back(&o);
      } else {
        plan.records.push_back({o.name, o.display, pipe.text(), false});
      }
    }
    std::vector<std::string> snapshot_order;
    auto snapshot = [&](const std::string& list) {
      if (plan.copies.contains(list)) return;
      plan.copies[list] = "";
      snapshot_order.push_back(list);
    };
    for (const auto* o : in_place) {
      const Pipeline& pipe = pipeline(*o);
      snapshot(pipe.source);
      for (const auto& s : pipe.stages) {
        if (s.kind == StageKind::Concat) snapshot(s.other);
      }
    }
    for (const auto* o : in_place) {
      for (const auto& s : pipeline(*o).stages) {
        if ((s.kind == StageKind::Skip || s.kind == StageKind::Limit) &&
            s.count.kind == jst::Count::Kind::SizeOf && !plan.copies.contains(s.count.name) &&
            !plan.sizes.contains(s.count.name)) {
          plan.sizes[s.count.name] = names_.fresh(s.count.name + "Size");
          plan.preamble.push_back("int " + plan.sizes[s.count.name] + " = " + s.count.name +
                                  ".size();");
        }
      }
    }
    for (const auto& list : snapshot_order) {
      std::string name = names_.fresh(snapshot_order.size() == 1 ? "copy" : list + "Copy");
      plan.copies[list] = name;
      plan.preamble.push_back("List<Integer> " + name + " = new ArrayList<>(" + list + ");");
    }
    for (const auto* o : in_place) {
      plan.records.push_back({o->name, o->display, pipeline(*o).text(), true});
    }
    bool has_in_place = !in_place.empty();
    for (auto& r : plan.records) {
      if (r.in_place) continue;
      const ir::Output& o = *p_.output(r.output);
      bool needs_local = has_in_place ||
                         (o.kind == ir::OutputKind::FreshList && find_first_form(pipeline(o)));
      r.target = needs_local ? names_.fresh(o.display == ir::kReturnName ? "result" : o.display)
                             : std::string();
    }
    return plan;
  }

  std::string emit() {
    EmitPlan plan = this->plan();
    v_ = plan.lambda_var;
    std::vector<std::string> lines;
    std::string returned;
    for (const auto& r : plan.records) {
      if (r.in_place) continue;
      const ir::Output& o = *p_.output(r.output);
      const Pipeline& pipe = pipeline(o);
      if (o.kind == ir::OutputKind::FreshList && find_first_form(pipe)) {
        imports_.list = imports_.array_list = true;
        lines.push_back("List<Integer> " + r.target + " = new ArrayList<>();");
        lines.push_back(find_first(pipe, {}, {}) + ".ifPresent(" + r.target + "::add);");
        returned = r.target;
        continue;
      }
      std::string value = expression(o, pipe);
      if (r.target.empty()) {
        returned = value;
      } else {
        lines.push_back(local_type(o) + " " + r.target + " = " + value + ";");
        returned = r.target;
      }
    }
    for (const auto& d : plan.preamble) lines.push_back(d);
    if (!plan.copies.empty()) imports_.list = imports_.array_list = true;
    for (const auto& r : plan.records) {
      if (!r.in_place) continue;
      const Pipeline& pipe = pipeline(*p_.output(r.output));
      lines.push_back(r.target + ".clear();");
      if (find_first_form(pipe)) {
        lines.push_back(find_first(pipe, plan.copies, plan.sizes) + ".ifPresent(" + r.target +
                        "::add);");
      } else {
        lines.push_back(stream(pipe, plan.copies, plan.sizes) + ".forEachOrdered(" + r.target +
                        "::add);");
      }
    }
    if (p_.return_type != frontend::TypeKind::Void) {
      if (returned.empty()) throw UntranslatableOp("method result has no pipeline");
      lines.push_back("return " + returned + ";");
    }
    std::string out = signature() + " {\n";
    for (const auto& l : lines) out += "  " + l + "\n";
    out += "}\n";
    return imports_.header() + out;
  }

 private:
  const Pipeline& pipeline(const ir::Output& o) const {
    auto it = c_.post.find(o.name);
    if (it == c_.post.end()) throw UntranslatableOp("no pipeline for output " + o.name);
    return it->second;
  }

  std::string signature() {
    std::string text = std::string(frontend::java_type_name(p_.return_type)) + " " + p_.name + "(";
    if (p_.return_type == frontend::TypeKind::List) imports_.list = true;
    for (std::size_t i = 0; i < p_.signature.size(); ++i) {
      if (i > 0) text += ", ";
      const auto& s = p_.signature[i];
      if (s.type == frontend::TypeKind::List) imports_.list = true;
      text += std::string(frontend::java_type_name(s.type)) + " " + s.name;
    }
    return text + ")";
  }

  std::string local_type(const ir::Output& o) {
    switch (o.kind) {
      case ir::OutputKind::Int: return "int";
      case ir::OutputKind::Boolean: return "boolean";
      default: imports_.list = true; return "List<Integer>";
    }
  }

  std::string count(const jst::Count& n, const std::map<std::string, std::string>& copies,
                    const std::map<std::string, std::string>& sizes) const {
    if (n.kind != jst::Count::Kind::SizeOf) return n.kind == jst::Count::Kind::Literal
                                                      ? std::to_string(n.value)
                                                      : n.name;
    if (auto it = copies.find(n.name); it != copies.end()) return it->second + ".size()";
    if (auto it = sizes.find(n.name); it != sizes.end()) return it->second;
    return n.name + ".size()";
  }

  // Stream expression for the stages of `pipe`; lists are read through
  // their snapshots when one exists.
  std::string stream(const Pipeline& pipe, const std::map<std::string, std::string>& copies,
                     const std::map<std::string, std::string>& sizes, std::size_t n_stages) {
    auto read = [&](const std::string& list) {
      auto it = copies.find(list);
      return (it == copies.end() ? list : it->second) + ".stream()";
    };
    std::string s = read(pipe.source);
    for (std::size_t i = 0; i < n_stages; ++i) {
      const jst::Stage& st = pipe.stages[i];
      switch (st.kind) {
        case StageKind::Filter: s += ".filter(" + v_ + " -> " + st.pred.text(v_) + ")"; break;
        case StageKind::Map: s += ".map(" + v_ + " -> " + java_mapper(st.mapper, v_) + ")"; break;
        case StageKind::Sorted: s += ".sorted()"; break;
        case StageKind::Skip: s += ".skip(" + count(st.count, copies, sizes) + ")"; break;
        case StageKind::Limit: s += ".limit(" + count(st.count, copies, sizes) + ")"; break;
        case StageKind::Append:
          imports_.stream = true;
          s = "Stream.concat(" + s + ", Stream.of(" + java_int(st.value) + "))";
          break;
        case StageKind::Concat:
          imports_.stream = true;
          s = "Stream.concat(" + s + ", " + read(st.other) + ")";
          break;
        default: throw UntranslatableOp("unknown stage");
      }
    }
    return s;
  }
  std::string stream(const Pipeline& pipe, const std::map<std::string, std::string>& copies,
                     const std::map<std::string, std::string>& sizes) {
    return stream(pipe, copies, sizes, pipe.stages.size());
  }

  std::string find_first(const Pipeline& pipe, const std::map<std::string, std::string>& copies,
                         const std::map<std::string, std::string>& sizes) {
    return stream(pipe, copies, sizes, pipe.stages.size() - 1) + ".findFirst()";
  }

  std::string reducer(const jst::Accumulator& acc) {
    switch (acc.kind) {
      case jst::AccumulatorKind::Sum: return "Integer::sum";
      case jst::AccumulatorKind::Min: return "Integer::min";
      case jst::AccumulatorKind::Max: return "Integer::max";
      case jst::AccumulatorKind::Product: {
        if (acc_a_.empty()) {
          acc_a_ = names_.fresh("a");
          acc_b_ = names_.fresh("b");
        }
        return "(" + acc_a_ + ", " + acc_b_ + ") -> " + acc_a_ + " * " + acc_b_;
      }
    }
    throw UntranslatableOp("unknown accumulator");
  }

  std::string expression(const ir::Output& o, const Pipeline& pipe) {
    if (pipe.trivial()) {
      switch (o.kind) {
        case ir::OutputKind::Int: return "0";
        case ir::OutputKind::Boolean: return "false";
        default: imports_.array_list = true; return "new ArrayList<>()";
      }
    }
    std::string s = stream(pipe, {}, {});
    if (!pipe.terminal) {
      imports_.collectors = true;
      return s + ".collect(Collectors.toList())";
    }
    const jst::Terminal& t = *pipe.terminal;
    switch (t.kind) {
      case TerminalKind::Reduce:
        return s + ".reduce(" + java_int(t.identity) + ", " + reducer(t.acc) + ")";
      case TerminalKind::Min: return s + ".min(Integer::compare).orElse(Integer.MAX_VALUE)";
      case TerminalKind::Max: return s + ".max(Integer::compare).orElse(Integer.MIN_VALUE)";
      case TerminalKind::Count: return "(int) " + s + ".count()";
      case TerminalKind::AnyMatch: return s + ".anyMatch(" + v_ + " -> " + t.pred.text(v_) + ")";
      case TerminalKind::AllMatch: return s + ".allMatch(" + v_ + " -> " + t.pred.text(v_) + ")";
    }
    throw UntranslatableOp("unknown terminal");
  }

  const ir::Program& p_;
  const vcgen::Candidate& c_;
  Namer names_;
  Imports imports_;
  std::string v_ = "el";
  std::string acc_a_;
  std::string acc_b_;
};

}  // namespace

EmitPlan plan_emission(const ir::Program& p, const vcgen::Candidate& c) {
  return Emitter(p, c).plan();
}

std::string emit(const ir::Program& p, const vcgen::Candidate& c) { return Emitter(p, c).emit(); }

}  // namespace streamline::codegen
