#include "streamline/codegen/stream_reader.hpp"

#include <cctype>
#include <climits>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "streamline/jst/text.hpp"

namespace streamline::codegen {

namespace {

using jst::Pipeline;

struct Token {
  std::string text;
  std::size_t begin = 0;
  std::size_t end = 0;
  bool number = false;
};

std::vector<Token> tokenize(std::string_view src) {
  static const char* kPuncts[] = {"->", "::", "==", "!=", ">=", "<=", "&&"};
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < src.size()) {
    char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (c == '/' && i + 1 < src.size() && src[i + 1] == '/') {
      while (i < src.size() && src[i] != '\n') ++i;
      continue;
    }
    std::size_t start = i;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (i < src.size() && (std::isalnum(static_cast<unsigned char>(src[i])) || src[i] == '_'))
        ++i;
      out.push_back({std::string(src.substr(start, i - start)), start, i, false});
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      while (i < src.size() && std::isdigit(static_cast<unsigned char>(src[i]))) ++i;
      out.push_back({std::string(src.substr(start, i - start)), start, i, true});
      continue;
    }
    std::size_t len = 1;
    for (const char* p : kPuncts) {
      if (src.substr(i, 2) == p) len = 2;
    }
    i += len;
    out.push_back({std::string(src.substr(start, len)), start, i, false});
  }
  out.push_back({"", src.size(), src.size(), false});
  return out;
}

class Reader {
 public:
  Reader(const ir::Program& p, std::string_view src) : p_(p), src_(src), toks_(tokenize(src)) {}

  vcgen::Candidate read() {
    while (!at_end() && peek() != "{") ++pos_;
    expect("{");
    while (peek() != "}") {
      if (at_end()) fail("unterminated method body");
      statement();
    }
    std::vector<jst::PipelineLine> lines;
    for (const auto& o : p_.outputs) {
      jst::PipelineLine line;
      line.target = o.name;
      if (auto it = outputs_.find(o.name); it != outputs_.end()) line.pipeline = it->second;
      lines.push_back(std::move(line));
    }
    return vcgen::candidate_from_lines(p_, lines);
  }

 private:
  const std::string& peek(std::size_t ahead = 0) const {
    return toks_[std::min(pos_ + ahead, toks_.size() - 1)].text;
  }
  bool at_end() const { return pos_ + 1 >= toks_.size(); }
  std::string next() {
    if (at_end()) fail("unexpected end of input");
    return toks_[pos_++].text;
  }
  bool accept(std::string_view t) {
    if (peek() != t) return false;
    ++pos_;
    return true;
  }
  void expect(std::string_view t) {
    if (!accept(t)) fail("expected '" + std::string(t) + "' but found '" + peek() + "'");
  }
  std::string ident() {
    std::string t = next();
    if (t.empty() || !(std::isalpha(static_cast<unsigned char>(t[0])) || t[0] == '_'))
      fail("expected identifier but found '" + t + "'");
    return t;
  }
  [[noreturn]] void fail(const std::string& msg) const {
    std::size_t offset = toks_[std::min(pos_, toks_.size() - 1)].begin;
    int line = 1;
    for (std::size_t i = 0; i < offset; ++i) line += src_[i] == '\n';
    throw StreamReadError("line " + std::to_string(line) + ": " + msg);
  }

  void list_type() {
    expect("List");
    expect("<");
    expect("Integer");
    expect(">");
  }

  void statement() {
    if (peek() == "return") {
      next();
      outputs_[std::string(ir::kReturnName)] = expression();
      expect(";");
      return;
    }
    if (peek() == "List" && peek(1) == "<") {
      list_type();
      std::string name = ident();
      expect("=");
      if (peek() == "new") {
        new_list();
        if (accept(")")) {
          locals_[name] = Pipeline{};
        } else {
          copies_[name] = resolve(ident());
          expect(")");
        }
      } else {
        locals_[name] = expression();
      }
      expect(";");
      return;
    }
    if (peek() == "int" || peek() == "boolean") {
      next();
      std::string name = ident();
      expect("=");
      if (peek(1) == "." && peek(2) == "size" && peek(5) == ";") {
        std::string list = resolve(ident());
        expect(".");
        expect("size");
        expect("(");
        expect(")");
        sizes_[name] = list;
      } else {
        locals_[name] = expression();
      }
      expect(";");
      return;
    }
    if (peek(1) == "." && peek(2) == "clear") {
      ident();
      expect(".");
      expect("clear");
      expect("(");
      expect(")");
      expect(";");
      return;
    }
    Pipeline pipe = stream();
    expect(".");
    std::string sink = ident();
    if (sink == "findFirst") {
      expect("(");
      expect(")");
      expect(".");
      expect("ifPresent");
      jst::Stage limit;
      limit.kind = jst::StageKind::Limit;
      limit.count = jst::Count::literal(1);
      pipe.stages.push_back(limit);
    } else if (sink != "forEachOrdered") {
      fail("unexpected stream sink " + sink);
    }
    expect("(");
    std::string target = ident();
    expect("::");
    expect("add");
    expect(")");
    expect(";");
    if (auto it = locals_.find(target); it != locals_.end()) {
      if (!it->second.trivial()) fail("second stream into local " + target);
      it->second = std::move(pipe);
      return;
    }
    const ir::Output* out = nullptr;
    for (const auto& o : p_.outputs) {
      if (o.kind == ir::OutputKind::InPlaceList && o.display == target) out = &o;
    }
    if (out == nullptr) fail(target + " is not a mutated list parameter");
    outputs_[out->name] = std::move(pipe);
  }

  void new_list() {
    expect("new");
    expect("ArrayList");
    expect("<");
    expect(">");
    expect("(");
  }

  std::string resolve(const std::string& name) const {
    auto it = copies_.find(name);
    return it == copies_.end() ? name : it->second;
  }

  std::int32_t integer() {
    if (accept("Integer")) {
      expect(".");
      std::string which = ident();
      if (which == "MIN_VALUE") return INT32_MIN;
      if (which == "MAX_VALUE") return INT32_MAX;
      fail("unknown constant Integer." + which);
    }
    bool neg = accept("-");
    if (!toks_[pos_].number) fail("expected integer but found '" + peek() + "'");
    long long v = std::stoll(next());
    if (neg) v = -v;
    if (v < INT32_MIN || v > INT32_MAX) fail("integer out of range");
    return static_cast<std::int32_t>(v);
  }

  // Raw text of a lambda argument, up to the closing parenthesis.
  std::string lambda_text() {
    std::size_t begin = toks_[pos_].begin;
    int depth = 0;
    while (!at_end()) {
      if (peek() == "(") ++depth;
      if (peek() == ")") {
        if (depth == 0) break;
        --depth;
      }
      ++pos_;
    }
    return std::string(src_.substr(begin, toks_[pos_].begin - begin));
  }

  jst::Predicate predicate() {
    std::string text = lambda_text();
    try {
      return jst::parse_predicate(text);
    } catch (const jst::PipelineSyntaxError& e) {
      fail(std::string("bad predicate: ") + e.what());
    }
  }

  jst::Count count() {
    if (toks_[pos_].number || peek() == "-" || peek() == "Integer") {
      return jst::Count::literal(integer());
    }
    std::string name = ident();
    if (accept(".")) {
      expect("size");
      expect("(");
      expect(")");
      return jst::Count::size_of(resolve(name));
    }
    if (auto it = sizes_.find(name); it != sizes_.end()) return jst::Count::size_of(it->second);
    return jst::Count::scalar(name);
  }

  Pipeline stream() {
    Pipeline pipe;
    if (accept("Stream")) {
      expect(".");
      expect("concat");
      expect("(");
      pipe = stream();
      expect(",");
      jst::Stage s;
      if (accept("Stream")) {
        expect(".");
        expect("of");
        expect("(");
        s.kind = jst::StageKind::Append;
        s.value = integer();
        expect(")");
      } else {
        s.kind = jst::StageKind::Concat;
        s.other = resolve(ident());
        expect(".");
        expect("stream");
        expect("(");
        expect(")");
      }
      expect(")");
      pipe.stages.push_back(s);
    } else {
      pipe.source = resolve(ident());
      expect(".");
      expect("stream");
      expect("(");
      expect(")");
    }
    static const std::set<std::string> kStages = {"filter", "map", "sorted", "skip", "limit"};
    while (peek() == "." && kStages.contains(peek(1))) {
      next();
      std::string op = next();
      expect("(");
      jst::Stage s;
      if (op == "filter") {
        s.kind = jst::StageKind::Filter;
        s.pred = predicate();
      } else if (op == "map") {
        s.kind = jst::StageKind::Map;
        std::string text = lambda_text();
        try {
          s.mapper = jst::parse_mapper(text);
        } catch (const jst::PipelineSyntaxError& e) {
          fail(std::string("bad mapper: ") + e.what());
        }
      } else if (op == "sorted") {
        s.kind = jst::StageKind::Sorted;
      } else {
        s.kind = op == "skip" ? jst::StageKind::Skip : jst::StageKind::Limit;
        s.count = count();
      }
      expect(")");
      pipe.stages.push_back(std::move(s));
    }
    return pipe;
  }

  jst::Accumulator accumulator() {
    jst::Accumulator acc;
    if (accept("Integer")) {
      expect("::");
      std::string fn = ident();
      if (fn == "sum") {
        acc.kind = jst::AccumulatorKind::Sum;
      } else if (fn == "min") {
        acc.kind = jst::AccumulatorKind::Min;
      } else if (fn == "max") {
        acc.kind = jst::AccumulatorKind::Max;
      } else {
        fail("unknown accumulator Integer::" + fn);
      }
      return acc;
    }
    expect("(");
    std::string a = ident();
    expect(",");
    std::string b = ident();
    expect(")");
    expect("->");
    if (ident() != a) fail("accumulator must combine its parameters in order");
    std::string op = next();
    if (ident() != b) fail("accumulator must combine its parameters in order");
    if (op == "+") {
      acc.kind = jst::AccumulatorKind::Sum;
    } else if (op == "*") {
      acc.kind = jst::AccumulatorKind::Product;
    } else {
      fail("unknown accumulator operator " + op);
    }
    return acc;
  }

  Pipeline expression() {
    if (peek() == "new") {
      new_list();
      expect(")");
      return Pipeline{};
    }
    if (accept("false")) return Pipeline{};
    if (toks_[pos_].number) {
      if (integer() != 0) fail("only 0 is a constant result");
      return Pipeline{};
    }
    if (accept("(")) {
      expect("int");
      expect(")");
      Pipeline pipe = stream();
      expect(".");
      expect("count");
      expect("(");
      expect(")");
      pipe.terminal = jst::Terminal{jst::TerminalKind::Count, {}, {}, 0};
      return pipe;
    }
    if (peek(1) != "." || (peek() != "Stream" && peek(2) != "stream")) {
      std::string name = ident();
      auto it = locals_.find(name);
      if (it == locals_.end()) fail("unknown local " + name);
      return it->second;
    }
    Pipeline pipe = stream();
    expect(".");
    std::string op = ident();
    expect("(");
    jst::Terminal t;
    if (op == "collect") {
      expect("Collectors");
      expect(".");
      expect("toList");
      expect("(");
      expect(")");
      expect(")");
      return pipe;
    }
    if (op == "reduce") {
      t.kind = jst::TerminalKind::Reduce;
      t.identity = integer();
      expect(",");
      t.acc = accumulator();
    } else if (op == "min" || op == "max") {
      t.kind = op == "min" ? jst::TerminalKind::Min : jst::TerminalKind::Max;
      expect("Integer");
      expect("::");
      expect("compare");
      expect(")");
      expect(".");
      expect("orElse");
      expect("(");
      std::int32_t fallback = integer();
      if (fallback != (op == "min" ? INT32_MAX : INT32_MIN)) fail("unexpected orElse value");
    } else if (op == "anyMatch" || op == "allMatch") {
      t.kind = op == "anyMatch" ? jst::TerminalKind::AnyMatch : jst::TerminalKind::AllMatch;
      t.pred = predicate();
    } else {
      fail("unknown terminal " + op);
    }
    expect(")");
    pipe.terminal = t;
    return pipe;
  }

  const ir::Program& p_;
  std::string_view src_;
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  std::map<std::string, std::string> copies_;  // snapshot -> list
  std::map<std::string, std::string> sizes_;   // hoisted size -> list
  std::map<std::string, Pipeline> locals_;
  std::map<std::string, Pipeline> outputs_;
};

}  // namespace

vcgen::Candidate read_stream_java(const ir::Program& p, std::string_view java) {
  return Reader(p, java).read();
}

}  // namespace streamline::codegen
