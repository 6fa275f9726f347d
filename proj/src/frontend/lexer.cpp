#include "streamline/frontend/lexer.hpp"

#include <array>
#include <cctype>

namespace streamline::frontend {

namespace {

constexpr std::array<std::string_view, 20> kMultiCharPuncts = {
    "<<=", ">>=", "->", "::", "++", "--", "+=", "-=", "*=", "/=",
    "%=",  "<=",  ">=", "==", "!=", "&&", "||", "<<", ">>", "&="};

bool is_ident_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == '$';
}

bool is_ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '$';
}

}  // namespace

std::vector<Token> tokenize(std::string_view src) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  int line = 1;
  int col = 1;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n && i < src.size(); ++k, ++i) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };

  while (i < src.size()) {
    char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (src.substr(i, 2) == "//") {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    if (src.substr(i, 2) == "/*") {
      Position start{line, col};
      advance(2);
      while (i < src.size() && src.substr(i, 2) != "*/") advance(1);
      if (i >= src.size()) throw SyntaxError(start, "unterminated comment", {"*/"});
      advance(2);
      continue;
    }

    Token tok;
    tok.pos = {line, col};
    if (is_ident_start(c)) {
      std::size_t j = i;
      while (j < src.size() && is_ident_char(src[j])) ++j;
      tok.kind = TokenKind::Identifier;
      tok.text = std::string(src.substr(i, j - i));
      advance(j - i);
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      tok.kind = TokenKind::Integer;
      tok.text = std::string(src.substr(i, j - i));
      if (j < src.size() && (is_ident_char(src[j]) || src[j] == '.')) {
        // 10L, 1.5, 0x1F and friends are outside the integer subset.
        std::size_t k = j;
        while (k < src.size() && (is_ident_char(src[k]) || src[k] == '.')) ++k;
        tok.kind = TokenKind::Unsupported;
        tok.text = std::string(src.substr(i, k - i));
        j = k;
      } else if (tok.text.size() > 10) {
        tok.value = INT64_MAX;
      } else {
        tok.value = std::stoll(tok.text);
      }
      advance(j - i);
    } else if (c == '"' || c == '\'') {
      std::size_t j = i + 1;
      while (j < src.size() && src[j] != c && src[j] != '\n') {
        if (src[j] == '\\') ++j;
        ++j;
      }
      if (j < src.size() && src[j] == c) ++j;
      tok.kind = TokenKind::Unsupported;
      tok.text = std::string(src.substr(i, j - i));
      advance(j - i);
    } else {
      tok.kind = TokenKind::Punct;
      for (auto p : kMultiCharPuncts) {
        if (src.substr(i, p.size()) == p) {
          tok.text = std::string(p);
          break;
        }
      }
      if (tok.text.empty()) tok.text = std::string(1, c);
      advance(tok.text.size());
    }
    tokens.push_back(std::move(tok));
  }
  Token end;
  end.kind = TokenKind::End;
  end.text = "end of input";
  end.pos = {line, col};
  tokens.push_back(end);
  return tokens;
}

}  // namespace streamline::frontend
