#include "streamline/jst/text.hpp"

#include <cctype>
#include <charconv>
#include <cstdint>
#include <limits>

namespace streamline::jst {

PipelineSyntaxError::PipelineSyntaxError(int line, int column, const std::string& msg)
    : std::runtime_error("pipeline syntax error at " + std::to_string(line) + ":" +
                         std::to_string(column) + ": " + msg),
      line_(line),
      column_(column) {}

namespace {

enum class Tok { Ident, Int, Punct, End };

struct Token {
  Tok kind = Tok::End;
  std::string text;
  std::int64_t value = 0;
  int column = 0;
};

class Reader {
 public:
  Reader(std::string_view src, int line) : line_(line) { tokenize(src); }

  const Token& peek(std::size_t ahead = 0) const {
    std::size_t i = std::min(pos_ + ahead, toks_.size() - 1);
    return toks_[i];
  }
  Token take() {
    Token t = peek();
    if (pos_ + 1 < toks_.size()) ++pos_;
    return t;
  }
  bool at(std::string_view punct) const {
    return peek().kind == Tok::Punct && peek().text == punct;
  }
  bool at_word(std::string_view word) const {
    return peek().kind == Tok::Ident && peek().text == word;
  }
  bool accept(std::string_view punct) {
    if (!at(punct)) return false;
    take();
    return true;
  }
  void expect(std::string_view punct) {
    if (!accept(punct)) fail("expected '" + std::string(punct) + "'");
  }
  std::string ident() {
    if (peek().kind != Tok::Ident) fail("expected identifier");
    return take().text;
  }
  std::int32_t integer() {
    bool neg = accept("-");
    if (peek().kind != Tok::Int) fail("expected integer");
    std::int64_t v = take().value;
    if (neg) v = -v;
    if (v < std::numeric_limits<std::int32_t>::min() ||
        v > std::numeric_limits<std::int32_t>::max()) {
      fail("integer out of range");
    }
    return static_cast<std::int32_t>(v);
  }
  [[noreturn]] void fail_at(int column, const std::string& msg) const {
    throw PipelineSyntaxError(line_, column, msg);
  }
  [[noreturn]] void fail(const std::string& msg) const {
    const Token& t = peek();
    std::string found = t.kind == Tok::End ? "end of line" : "'" + t.text + "'";
    throw PipelineSyntaxError(line_, t.column, msg + ", found " + found);
  }

 private:
  void tokenize(std::string_view s) {
    static constexpr std::string_view kMulti[] = {"=>", "->", "::", "&&", ">=", "<=",
                                                  "==", "!=", "[..", "[]"};
    std::size_t i = 0;
    while (i < s.size()) {
      char c = s[i];
      int col = static_cast<int>(i) + 1;
      if (std::isspace(static_cast<unsigned char>(c))) {
        ++i;
        continue;
      }
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == '$') {
        std::size_t j = i;
        while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_' ||
                                s[j] == '$' || s[j] == '@')) {
          ++j;
        }
        toks_.push_back({Tok::Ident, std::string(s.substr(i, j - i)), 0, col});
        i = j;
        continue;
      }
      if (std::isdigit(static_cast<unsigned char>(c))) {
        std::size_t j = i;
        while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
        std::int64_t v = 0;
        auto [p, ec] = std::from_chars(s.data() + i, s.data() + j, v);
        if (ec != std::errc()) throw PipelineSyntaxError(line_, col, "integer out of range");
        toks_.push_back({Tok::Int, std::string(s.substr(i, j - i)), v, col});
        i = j;
        continue;
      }
      bool matched = false;
      for (auto m : kMulti) {
        if (s.substr(i, m.size()) == m) {
          toks_.push_back({Tok::Punct, std::string(m), 0, col});
          i += m.size();
          matched = true;
          break;
        }
      }
      if (matched) continue;
      if (std::string_view("().,<>+-*%").find(c) == std::string_view::npos) {
        throw PipelineSyntaxError(line_, col, std::string("unexpected character '") + c + "'");
      }
      toks_.push_back({Tok::Punct, std::string(1, c), 0, col});
      ++i;
    }
    toks_.push_back({Tok::End, "", 0, static_cast<int>(s.size()) + 1});
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  int line_;
};

CmpOp parse_cmp(Reader& r) {
  static const std::pair<std::string_view, CmpOp> kOps[] = {
      {">=", CmpOp::Ge}, {"<=", CmpOp::Le}, {"==", CmpOp::Eq},
      {"!=", CmpOp::Ne}, {">", CmpOp::Gt},  {"<", CmpOp::Lt}};
  for (auto [text, op] : kOps) {
    if (r.accept(text)) return op;
  }
  r.fail("expected comparison operator");
}

Predicate predicate_body(Reader& r, const std::string& var) {
  Predicate p;
  if (r.at_word("true")) {
    r.take();
    return p;
  }
  do {
    std::string v = r.ident();
    if (v != var) r.fail("unknown variable '" + v + "'");
    Atom a;
    if (r.accept("%")) {
      a.modulus = r.integer();
      if (a.modulus == 0) r.fail("modulus must be nonzero");
    }
    a.op = parse_cmp(r);
    a.constant = r.integer();
    p.atoms.push_back(a);
  } while (r.accept("&&"));
  if (p.atoms.size() > 2) r.fail("at most two atoms are supported");
  return p;
}

// Linear expression in one variable: sums of c, v, c*v, v*c.
Mapper mapper_body(Reader& r, const std::string& var) {
  std::int64_t scale = 0;
  std::int64_t offset = 0;
  bool first = true;
  while (true) {
    int sign = 1;
    if (r.accept("-")) {
      sign = -1;
    } else if (!first) {
      if (!r.accept("+")) break;
      if (r.accept("-")) sign = -1;
    }
    first = false;
    if (r.peek().kind == Tok::Int) {
      std::int64_t c = r.take().value;
      if (r.accept("*")) {
        std::string v = r.ident();
        if (v != var) r.fail("unknown variable '" + v + "'");
        scale += sign * c;
      } else {
        offset += sign * c;
      }
    } else {
      std::string v = r.ident();
      if (v != var) r.fail("unknown variable '" + v + "'");
      if (r.accept("*")) {
        scale += sign * r.integer();
      } else {
        scale += sign;
      }
    }
    if (!(r.at("+") || r.at("-"))) break;
  }
  return {static_cast<std::int32_t>(scale), static_cast<std::int32_t>(offset)};
}

std::string lambda_head(Reader& r) {
  std::string var = r.ident();
  r.expect("->");
  return var;
}

Accumulator accumulator(Reader& r) {
  if (r.at_word("Integer")) {
    r.take();
    r.expect("::");
    std::string m = r.ident();
    if (m == "sum") return {AccumulatorKind::Sum};
    if (m == "min") return {AccumulatorKind::Min};
    if (m == "max") return {AccumulatorKind::Max};
    r.fail("unknown accumulator Integer::" + m);
  }
  r.expect("(");
  std::string a = r.ident();
  r.expect(",");
  std::string b = r.ident();
  r.expect(")");
  r.expect("->");
  std::string x = r.ident();
  Accumulator acc;
  if (r.accept("+")) {
    acc.kind = AccumulatorKind::Sum;
  } else if (r.accept("*")) {
    acc.kind = AccumulatorKind::Product;
  } else {
    r.fail("expected '+' or '*'");
  }
  std::string y = r.ident();
  if (!((x == a && y == b) || (x == b && y == a))) r.fail("accumulator must combine its parameters");
  return acc;
}

Count count(Reader& r) {
  if (r.peek().kind == Tok::Int || r.at("-")) return Count::literal(r.integer());
  std::string name = r.ident();
  if (r.accept(".")) {
    if (r.ident() != "size") r.fail("expected size()");
    r.expect("(");
    r.expect(")");
    return Count::size_of(name);
  }
  return Count::scalar(name);
}

void parse_call(Reader& r, Pipeline& p) {
  Token name_tok = r.peek();
  std::string name = r.ident();
  r.expect("(");
  if (p.terminal) r.fail("no stage may follow a terminal operation");
  Stage s;
  if (name == "filter" || name == "map") {
    std::string var = lambda_head(r);
    s.kind = name == "filter" ? StageKind::Filter : StageKind::Map;
    if (s.kind == StageKind::Filter) {
      s.pred = predicate_body(r, var);
    } else {
      s.mapper = mapper_body(r, var);
    }
  } else if (name == "sorted") {
    s.kind = StageKind::Sorted;
  } else if (name == "skip" || name == "limit") {
    s.kind = name == "skip" ? StageKind::Skip : StageKind::Limit;
    s.count = count(r);
  } else if (name == "append") {
    s.kind = StageKind::Append;
    s.value = r.integer();
  } else if (name == "concat") {
    s.kind = StageKind::Concat;
    s.other = r.ident();
  } else {
    Terminal t;
    if (name == "reduce") {
      t.kind = TerminalKind::Reduce;
      t.identity = r.integer();
      r.expect(",");
      t.acc = accumulator(r);
    } else if (name == "min") {
      t.kind = TerminalKind::Min;
    } else if (name == "max") {
      t.kind = TerminalKind::Max;
    } else if (name == "count") {
      t.kind = TerminalKind::Count;
    } else if (name == "anyMatch" || name == "allMatch") {
      t.kind = name == "anyMatch" ? TerminalKind::AnyMatch : TerminalKind::AllMatch;
      t.pred = predicate_body(r, lambda_head(r));
    } else {
      r.fail_at(name_tok.column, "unknown stream operation '" + name + "'");
    }
    r.expect(")");
    p.terminal = t;
    return;
  }
  r.expect(")");
  p.stages.push_back(std::move(s));
}

}  // namespace

PipelineLine parse_pipeline_line(std::string_view text, int line) {
  Reader r(text, line);
  PipelineLine out;
  int term_begin = r.peek().column - 1;
  if (r.accept("[]")) {
  } else if (r.at_word("unchanged")) {
    r.take();
  } else if (r.peek().kind == Tok::Int && r.peek().value == 0) {
    r.take();
  } else {
    Pipeline& p = out.pipeline;
    p.source = r.ident();
    if (r.accept("[..")) {
      p.cut = r.ident();
      r.expect(")");
    }
    r.expect(".");
    if (r.ident() != "stream") r.fail("expected stream()");
    r.expect("(");
    r.expect(")");
    while (r.accept(".")) parse_call(r, p);
  }
  int term_end = r.peek().column - 1;
  r.expect("=>");
  out.target = r.ident();
  if (r.peek().kind != Tok::End) r.fail("expected end of line");
  std::string_view term = text.substr(static_cast<std::size_t>(term_begin),
                                      static_cast<std::size_t>(term_end - term_begin));
  while (!term.empty() && std::isspace(static_cast<unsigned char>(term.back()))) {
    term.remove_suffix(1);
  }
  out.text = std::string(term);
  return out;
}

std::vector<PipelineLine> parse_pipeline_text(std::string_view text) {
  std::vector<PipelineLine> out;
  int line = 0;
  while (!text.empty()) {
    ++line;
    std::size_t nl = text.find('\n');
    std::string_view row = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view() : text.substr(nl + 1);
    std::size_t hash = row.find('#');
    if (hash != std::string_view::npos) row = row.substr(0, hash);
    bool blank = true;
    for (char c : row) {
      if (!std::isspace(static_cast<unsigned char>(c))) blank = false;
    }
    if (blank) continue;
    out.push_back(parse_pipeline_line(row, line));
  }
  return out;
}

Predicate parse_predicate(std::string_view text) {
  Reader r(text, 1);
  std::string var = lambda_head(r);
  Predicate p = predicate_body(r, var);
  if (r.peek().kind != Tok::End) r.fail("expected end of predicate");
  return p;
}

Mapper parse_mapper(std::string_view text) {
  Reader r(text, 1);
  std::string var = lambda_head(r);
  Mapper m = mapper_body(r, var);
  if (r.peek().kind != Tok::End) r.fail("expected end of mapper");
  return m;
}

}  // namespace streamline::jst
