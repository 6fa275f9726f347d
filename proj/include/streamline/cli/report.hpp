#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "streamline/heap/enumerate.hpp"

namespace streamline::cli {

// Error marks a corpus row whose file could not be read or compiled.
enum class Outcome { Refactored, NoRefactoring, BaselineOnly, Error };

const char* to_string(Outcome o);

struct RefactorReport {
  std::string input_path;
  Outcome outcome = Outcome::NoRefactoring;
  std::string reason;  // failure reason of the semantic engine, or the error
  std::string detail;
  std::optional<std::string> pipeline_text;
  std::optional<std::string> java_text;
  std::optional<std::string> baseline_pattern;  // set when the baseline matched
  int length = 0;
  int iterations = 0;
  int counterexample_count = 0;
  std::vector<std::vector<std::string>> counterexamples;  // constructor lists
  std::int64_t elapsed_ms = 0;
  heap::Bounds bounds;
  std::uint64_t seed = 0;
  std::string mode;
  bool ga = true;

  bool semantic_success() const { return outcome == Outcome::Refactored; }
  bool baseline_success() const { return baseline_pattern.has_value(); }
};

nlohmann::ordered_json to_json(const RefactorReport& r);
nlohmann::ordered_json bounds_json(const heap::Bounds& b);

struct CorpusSummary {
  std::vector<RefactorReport> rows;  // sorted by file name
  int semantic = 0;
  int baseline = 0;
  int either = 0;
  int errors = 0;
};

CorpusSummary summarize(std::vector<RefactorReport> rows);
nlohmann::ordered_json to_json(const CorpusSummary& s);
std::string summary_table(const CorpusSummary& s);

}  // namespace streamline::cli
