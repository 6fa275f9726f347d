#include "streamline/frontend/parser.hpp"

#include <algorithm>
#include <optional>
#include <set>

#include "streamline/frontend/lexer.hpp"

namespace streamline::frontend {

namespace {

const std::set<std::string, std::less<>> kListTypes = {
    "List", "ArrayList", "LinkedList", "Collection"};

const std::set<std::string, std::less<>> kUnsupportedTypes = {
    "long",   "short", "byte", "char", "float",  "double",  "String",
    "Object", "Map",   "Set",  "HashMap", "HashSet", "Long", "Double",
    "Optional", "Stream", "var"};

const std::set<std::string, std::less<>> kUnsupportedKeywords = {
    "do",    "switch", "try",        "catch", "throw",  "class",
    "super", "this",   "instanceof", "synchronized", "assert", "yield",
    "case",  "default", "finally",   "goto"};

const std::set<std::string, std::less<>> kModifiers = {
    "public", "private", "protected", "static", "final"};

std::optional<Method> method_named(std::string_view name) {
  static const std::pair<std::string_view, Method> kTable[] = {
      {"size", Method::Size},       {"get", Method::Get},
      {"hasNext", Method::HasNext}, {"next", Method::Next},
      {"iterator", Method::Iterator}, {"intValue", Method::IntValue},
      {"add", Method::Add},         {"set", Method::Set},
      {"clear", Method::Clear},     {"remove", Method::Remove}};
  for (const auto& [n, m] : kTable) {
    if (n == name) return m;
  }
  return std::nullopt;
}

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  MiniJProgram program() {
    MiniJProgram prog;
    skip_modifiers();
    prog.return_type = type(/*allow_void=*/true);
    prog.name = identifier("method name");
    expect("(");
    if (!peek_is(")")) {
      do {
        skip_modifiers();
        Param p;
        p.pos = peek().pos;
        p.type = type(false);
        if (p.type == TypeKind::Iterator) {
          throw UnsupportedConstruct(p.pos, "iterator parameters");
        }
        p.name = identifier("parameter name");
        prog.params.push_back(std::move(p));
      } while (accept(","));
    }
    expect(")");
    prog.body = block();
    if (peek().kind != TokenKind::End) fail({"end of input"});
    return prog;
  }

 private:
  const Token& peek(std::size_t ahead = 0) const {
    return tokens_[std::min(pos_ + ahead, tokens_.size() - 1)];
  }

  bool peek_is(std::string_view text, std::size_t ahead = 0) const {
    const Token& t = peek(ahead);
    return (t.kind == TokenKind::Punct || t.kind == TokenKind::Identifier) &&
           t.text == text;
  }

  const Token& take() {
    const Token& t = tokens_[pos_];
    if (pos_ + 1 < tokens_.size()) ++pos_;
    return t;
  }

  bool accept(std::string_view text) {
    if (!peek_is(text)) return false;
    take();
    return true;
  }

  [[noreturn]] void fail(std::vector<std::string> expected) const {
    const Token& t = peek();
    if (t.kind == TokenKind::Unsupported) {
      throw UnsupportedConstruct(t.pos, "literal " + t.text);
    }
    std::string found = t.kind == TokenKind::End ? t.text : "'" + t.text + "'";
    throw SyntaxError(t.pos, found, std::move(expected));
  }

  void expect(std::string_view text) {
    if (!accept(text)) fail({"'" + std::string(text) + "'"});
  }

  std::string identifier(const char* what) {
    const Token& t = peek();
    if (t.kind != TokenKind::Identifier) fail({what});
    if (kUnsupportedKeywords.count(t.text)) {
      throw UnsupportedConstruct(t.pos, "keyword " + t.text);
    }
    return take().text;
  }

  void skip_modifiers() {
    while (peek().kind == TokenKind::Identifier && kModifiers.count(peek().text)) {
      take();
    }
  }

  bool at_type() const {
    const Token& t = peek();
    if (t.kind != TokenKind::Identifier) return false;
    if (t.text == "int" || t.text == "boolean" || t.text == "Iterator" ||
        kListTypes.count(t.text) || kUnsupportedTypes.count(t.text)) {
      return true;
    }
    // `Integer x` declares a boxed int; `Integer.MIN_VALUE` is an expression.
    return t.text == "Integer" && peek(1).kind == TokenKind::Identifier;
  }

  void element_type() {
    const Token& t = peek();
    expect("<");
    if (peek().kind == TokenKind::Identifier &&
        (kListTypes.count(peek().text) || peek().text == "Iterator")) {
      throw UnsupportedConstruct(t.pos, "nested collection types");
    }
    if (!peek_is("Integer")) {
      if (peek().kind == TokenKind::Identifier) {
        throw UnsupportedConstruct(peek().pos, "element type " + peek().text);
      }
      fail({"'Integer'"});
    }
    take();
    expect(">");
  }

  TypeKind type(bool allow_void) {
    const Token& t = peek();
    if (t.kind != TokenKind::Identifier) fail({"type"});
    TypeKind kind;
    if (t.text == "void" && allow_void) {
      kind = TypeKind::Void;
      take();
    } else if (t.text == "int" || t.text == "Integer") {
      kind = TypeKind::Int;
      take();
    } else if (t.text == "boolean") {
      kind = TypeKind::Boolean;
      take();
    } else if (kListTypes.count(t.text)) {
      take();
      element_type();
      kind = TypeKind::List;
    } else if (t.text == "Iterator") {
      take();
      element_type();
      kind = TypeKind::Iterator;
    } else if (kUnsupportedTypes.count(t.text) || t.text == "void") {
      throw UnsupportedConstruct(t.pos, "type " + t.text);
    } else {
      fail({"type"});
    }
    if (peek_is("[")) throw UnsupportedConstruct(peek().pos, "arrays");
    return kind;
  }

  StmtPtr block() {
    auto s = std::make_unique<Stmt>();
    s->kind = StmtKind::Block;
    s->pos = peek().pos;
    expect("{");
    while (!peek_is("}")) {
      if (peek().kind == TokenKind::End) fail({"'}'"});
      s->stmts.push_back(statement());
    }
    expect("}");
    return s;
  }

  StmtPtr declaration(bool require_semicolon) {
    auto s = std::make_unique<Stmt>();
    s->kind = StmtKind::VarDecl;
    s->pos = peek().pos;
    s->type = type(false);
    do {
      Declarator d;
      d.pos = peek().pos;
      d.name = identifier("variable name");
      if (accept("=")) d.init = expression();
      s->declarators.push_back(std::move(d));
    } while (accept(","));
    if (require_semicolon) expect(";");
    return s;
  }

  // Assignment, increment or call statement without the trailing ';'.
  StmtPtr simple_statement() {
    auto s = std::make_unique<Stmt>();
    s->pos = peek().pos;
    if (peek_is("++") || peek_is("--")) {
      s->kind = StmtKind::IncDec;
      s->increment = take().text == "++";
      s->prefix = true;
      s->target = identifier("variable name");
      return s;
    }
    if (peek().kind != TokenKind::Identifier) {
      fail({"statement"});
    }
    const Token& next = peek(1);
    if (next.kind == TokenKind::Punct) {
      static const std::pair<std::string_view, AssignOp> kAssignOps[] = {
          {"=", AssignOp::Set},  {"+=", AssignOp::Add}, {"-=", AssignOp::Sub},
          {"*=", AssignOp::Mul}, {"/=", AssignOp::Div}, {"%=", AssignOp::Mod}};
      for (const auto& [text, op] : kAssignOps) {
        if (next.text == text) {
          s->kind = StmtKind::Assign;
          s->target = identifier("variable name");
          take();
          s->op = op;
          s->expr = expression();
          return s;
        }
      }
      if (next.text == "++" || next.text == "--") {
        s->kind = StmtKind::IncDec;
        s->target = identifier("variable name");
        s->increment = take().text == "++";
        s->prefix = false;
        return s;
      }
      if (next.text == "<<=" || next.text == ">>=" || next.text == "&=") {
        throw UnsupportedConstruct(next.pos, "operator " + next.text);
      }
    }
    auto e = expression();
    if (e->kind != ExprKind::Call) {
      throw SyntaxError(s->pos, "expression statement", {"assignment", "call"});
    }
    s->kind = StmtKind::ExprStmt;
    s->expr = std::move(e);
    return s;
  }

  StmtPtr statement() {
    const Token& t = peek();
    if (peek_is("{")) return block();
    if (peek_is(";")) {
      auto s = std::make_unique<Stmt>();
      s->kind = StmtKind::Block;
      s->pos = take().pos;
      return s;
    }
    if (t.kind == TokenKind::Identifier) {
      if (kUnsupportedKeywords.count(t.text)) {
        throw UnsupportedConstruct(t.pos, "keyword " + t.text);
      }
      if (t.text == "final") {
        take();
        return statement();
      }
      if (t.text == "if") return if_statement();
      if (t.text == "while") return while_statement();
      if (t.text == "for") return for_statement();
      if (t.text == "break" || t.text == "continue") {
        auto s = std::make_unique<Stmt>();
        s->kind = t.text == "break" ? StmtKind::Break : StmtKind::Continue;
        s->pos = take().pos;
        if (peek().kind == TokenKind::Identifier) {
          throw UnsupportedConstruct(peek().pos, "labelled jumps");
        }
        expect(";");
        return s;
      }
      if (t.text == "return") {
        auto s = std::make_unique<Stmt>();
        s->kind = StmtKind::Return;
        s->pos = take().pos;
        if (!peek_is(";")) s->expr = expression();
        expect(";");
        return s;
      }
      if (at_type()) return declaration(true);
    }
    auto s = simple_statement();
    expect(";");
    return s;
  }

  StmtPtr if_statement() {
    auto s = std::make_unique<Stmt>();
    s->kind = StmtKind::If;
    s->pos = take().pos;
    expect("(");
    s->expr = expression();
    expect(")");
    s->first = statement();
    if (accept("else")) s->second = statement();
    return s;
  }

  StmtPtr while_statement() {
    auto s = std::make_unique<Stmt>();
    s->kind = StmtKind::While;
    s->pos = take().pos;
    expect("(");
    s->expr = expression();
    expect(")");
    s->first = statement();
    return s;
  }

  StmtPtr for_statement() {
    auto s = std::make_unique<Stmt>();
    s->pos = take().pos;
    expect("(");
    // Enhanced for: `for (int x : list)`.
    if (at_type() && peek(1).kind == TokenKind::Identifier && peek_is(":", 2)) {
      Position type_pos = peek().pos;
      TypeKind elem = type(false);
      if (elem != TypeKind::Int) {
        throw TypeError(type_pos, "enhanced for element must be int");
      }
      s->kind = StmtKind::ForEach;
      s->target = identifier("variable name");
      expect(":");
      s->expr = expression();
      expect(")");
      s->first = statement();
      return s;
    }
    s->kind = StmtKind::For;
    if (!peek_is(";")) {
      s->init = at_type() ? declaration(false) : simple_statement();
    }
    expect(";");
    if (peek_is(";")) {
      s->expr = make_bool(true, peek().pos);
    } else {
      s->expr = expression();
    }
    expect(";");
    if (!peek_is(")")) {
      s->update = simple_statement();
      if (peek_is(",")) throw UnsupportedConstruct(peek().pos, "comma in for update");
    }
    expect(")");
    s->first = statement();
    return s;
  }

  // Precedence climbing over Java's binary operators.
  static int precedence(std::string_view op) {
    if (op == "||") return 1;
    if (op == "&&") return 2;
    if (op == "==" || op == "!=") return 3;
    if (op == "<" || op == "<=" || op == ">" || op == ">=") return 4;
    if (op == "+" || op == "-") return 5;
    if (op == "*" || op == "/" || op == "%") return 6;
    return 0;
  }

  static BinaryOp binary_op(std::string_view op) {
    static const std::pair<std::string_view, BinaryOp> kOps[] = {
        {"+", BinaryOp::Add}, {"-", BinaryOp::Sub},  {"*", BinaryOp::Mul},
        {"/", BinaryOp::Div}, {"%", BinaryOp::Mod},  {"<", BinaryOp::Lt},
        {"<=", BinaryOp::Le}, {">", BinaryOp::Gt},   {">=", BinaryOp::Ge},
        {"==", BinaryOp::Eq}, {"!=", BinaryOp::Ne},  {"&&", BinaryOp::And},
        {"||", BinaryOp::Or}};
    for (const auto& [text, b] : kOps) {
      if (text == op) return b;
    }
    return BinaryOp::Add;
  }

  ExprPtr expression(int min_prec = 1) {
    auto lhs = unary();
    while (true) {
      const Token& t = peek();
      if (t.kind == TokenKind::Punct) {
        if (t.text == "?") throw UnsupportedConstruct(t.pos, "conditional operator");
        if (t.text == "&" || t.text == "|" || t.text == "^" || t.text == "<<" ||
            t.text == ">>") {
          throw UnsupportedConstruct(t.pos, "operator " + t.text);
        }
      }
      int prec = t.kind == TokenKind::Punct ? precedence(t.text) : 0;
      if (prec < min_prec || prec == 0) break;
      Position pos = t.pos;
      BinaryOp op = binary_op(take().text);
      auto rhs = expression(prec + 1);
      lhs = make_binary(op, std::move(lhs), std::move(rhs), pos);
    }
    return lhs;
  }

  ExprPtr unary() {
    const Token& t = peek();
    if (peek_is("-")) {
      Position pos = take().pos;
      auto operand = unary();
      if (operand->kind == ExprKind::IntLiteral && operand->value == 2147483648LL) {
        operand->value = -2147483648LL;
        operand->pos = pos;
        return operand;
      }
      return make_unary(UnaryOp::Neg, std::move(operand), pos);
    }
    if (peek_is("!")) {
      Position pos = take().pos;
      return make_unary(UnaryOp::Not, unary(), pos);
    }
    if (peek_is("+")) {
      take();
      return unary();
    }
    if (peek_is("++") || peek_is("--") || peek_is("~")) {
      throw UnsupportedConstruct(t.pos, "operator " + t.text + " inside expression");
    }
    auto e = postfix(primary());
    if (peek_is("++") || peek_is("--")) {
      throw UnsupportedConstruct(peek().pos, "increment inside expression");
    }
    return e;
  }

  std::vector<ExprPtr> arguments() {
    std::vector<ExprPtr> args;
    expect("(");
    if (!peek_is(")")) {
      do {
        args.push_back(expression());
      } while (accept(","));
    }
    expect(")");
    return args;
  }

  ExprPtr postfix(ExprPtr e) {
    while (peek_is(".")) {
      take();
      const Token& name = peek();
      if (name.kind != TokenKind::Identifier) fail({"method name"});
      auto method = method_named(name.text);
      if (!method) {
        throw UnsupportedConstruct(name.pos, "method " + name.text);
      }
      take();
      if (!peek_is("(")) fail({"'('"});
      e = make_call(std::move(e), *method, arguments(), name.pos);
    }
    if (peek_is("[")) throw UnsupportedConstruct(peek().pos, "arrays");
    return e;
  }

  ExprPtr primary() {
    const Token& t = peek();
    switch (t.kind) {
      case TokenKind::Integer: {
        if (t.value > 2147483648LL) {
          throw SyntaxError(t.pos, "integer literal " + t.text, {"int literal"});
        }
        take();
        return make_int(t.value, t.pos);
      }
      case TokenKind::Unsupported:
        throw UnsupportedConstruct(t.pos, "literal " + t.text);
      case TokenKind::End:
        fail({"expression"});
      case TokenKind::Punct:
        if (t.text == "(") {
          take();
          if (at_type()) throw UnsupportedConstruct(t.pos, "casts");
          auto inner = expression();
          expect(")");
          return inner;
        }
        if (t.text == "->" || t.text == "::") {
          throw UnsupportedConstruct(t.pos, "lambdas");
        }
        fail({"expression"});
      case TokenKind::Identifier:
        break;
    }
    if (t.text == "true" || t.text == "false") {
      take();
      return make_bool(t.text == "true", t.pos);
    }
    if (t.text == "null") throw UnsupportedConstruct(t.pos, "null");
    if (t.text == "new") return new_expression();
    if (kUnsupportedKeywords.count(t.text)) {
      throw UnsupportedConstruct(t.pos, "keyword " + t.text);
    }
    if (t.text == "Integer" && peek_is(".", 1)) {
      const Token& field = peek(2);
      if (field.text == "MIN_VALUE" || field.text == "MAX_VALUE") {
        auto e = std::make_unique<Expr>();
        e->kind = ExprKind::NamedConstant;
        e->name = "Integer." + field.text;
        e->pos = t.pos;
        take();
        take();
        take();
        return e;
      }
      throw UnsupportedConstruct(t.pos, "static member Integer." + field.text);
    }
    Position pos = t.pos;
    std::string name = take().text;
    if (peek_is("(")) throw UnsupportedConstruct(pos, "call to " + name);
    if (peek_is(".") && peek(1).kind == TokenKind::Identifier &&
        !method_named(peek(1).text) && peek_is("(", 2)) {
      throw UnsupportedConstruct(pos, "call to " + name + "." + peek(1).text);
    }
    return make_var(std::move(name), pos);
  }

  ExprPtr new_expression() {
    Position pos = take().pos;
    const Token& t = peek();
    if (t.kind != TokenKind::Identifier) fail({"class name"});
    if (!kListTypes.count(t.text) || t.text == "List" || t.text == "Collection") {
      throw UnsupportedConstruct(t.pos, "allocation of " + t.text);
    }
    take();
    expect("<");
    if (!peek_is(">")) {
      if (!peek_is("Integer")) {
        throw UnsupportedConstruct(peek().pos, "element type " + peek().text);
      }
      take();
    }
    expect(">");
    auto e = std::make_unique<Expr>();
    e->kind = ExprKind::NewList;
    e->pos = pos;
    auto args = arguments();
    if (args.size() > 1) throw UnsupportedConstruct(pos, "list constructor arguments");
    for (auto& a : args) e->operands.push_back(std::move(a));
    return e;
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

}  // namespace

MiniJProgram parse(std::string_view source) {
  Parser parser(tokenize(source));
  return parser.program();
}

}  // namespace streamline::frontend
