#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "streamline/frontend/errors.hpp"

namespace streamline::frontend {

enum class TokenKind { Identifier, Integer, Punct, Unsupported, End };

struct Token {
  TokenKind kind = TokenKind::End;
  std::string text;
  std::int64_t value = 0;  // Integer tokens only
  Position pos;
};

// Splits MiniJ source into tokens. String and character literals are
// reported as Unsupported tokens so the parser can name them.
std::vector<Token> tokenize(std::string_view source);

}  // namespace streamline::frontend
