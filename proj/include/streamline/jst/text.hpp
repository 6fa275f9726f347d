#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "streamline/jst/pipeline.hpp"

namespace streamline::jst {

class PipelineSyntaxError : public std::runtime_error {
 public:
  PipelineSyntaxError(int line, int column, const std::string& msg);
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

// One `term => target` line.
struct PipelineLine {
  Pipeline pipeline;
  std::string target;
  std::string text;  // the term as written; `unchanged`, `[]` or `0` for trivial terms
};

// Parses a single line such as `l.stream().filter(v -> v > 0) => out`.
// Trivial terms are `unchanged`, `[]` and `0`.
PipelineLine parse_pipeline_line(std::string_view text, int line = 1);

// Parses one pipeline per non-blank line; `#` starts a comment.
std::vector<PipelineLine> parse_pipeline_text(std::string_view text);

// Lambda bodies on their own, mainly for tests.
Predicate parse_predicate(std::string_view text);
Mapper parse_mapper(std::string_view text);

}  // namespace streamline::jst
