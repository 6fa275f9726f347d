#include "streamline/cli/report.hpp"

#include <algorithm>
#include <filesystem>
#include <sstream>

namespace streamline::cli {

const char* to_string(Outcome o) {
  switch (o) {
    case Outcome::Refactored: return "Refactored";
    case Outcome::NoRefactoring: return "NoRefactoring";
    case Outcome::BaselineOnly: return "BaselineOnly";
    case Outcome::Error: return "Error";
  }
  return "?";
}

nlohmann::ordered_json bounds_json(const heap::Bounds& b) {
  nlohmann::ordered_json j;
  j["maxListLength"] = b.max_len;
  j["values"] = b.values;
  j["aliasing"] = b.aliasing;
  return j;
}

nlohmann::ordered_json to_json(const RefactorReport& r) {
  nlohmann::ordered_json j;
  j["inputPath"] = r.input_path;
  j["outcome"] = to_string(r.outcome);
  if (r.outcome != Outcome::Refactored) j["reason"] = r.reason;
  if (!r.detail.empty()) j["detail"] = r.detail;
  j["pipelineText"] = r.pipeline_text ? nlohmann::ordered_json(*r.pipeline_text) : nullptr;
  j["javaText"] = r.java_text ? nlohmann::ordered_json(*r.java_text) : nullptr;
  j["pipelineLength"] = r.length;
  j["baseline"] = r.baseline_pattern ? nlohmann::ordered_json(*r.baseline_pattern) : nullptr;
  j["iterations"] = r.iterations;
  j["counterexampleCount"] = r.counterexample_count;
  j["counterexamples"] = r.counterexamples;
  j["elapsedMs"] = r.elapsed_ms;
  j["boundsUsed"] = bounds_json(r.bounds);
  j["mode"] = r.mode;
  j["ga"] = r.ga;
  j["seed"] = r.seed;
  return j;
}

CorpusSummary summarize(std::vector<RefactorReport> rows) {
  CorpusSummary s;
  std::stable_sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
    return a.input_path < b.input_path;
  });
  for (const auto& r : rows) {
    s.semantic += r.semantic_success();
    s.baseline += r.baseline_success();
    s.either += r.semantic_success() || r.baseline_success();
    s.errors += r.outcome == Outcome::Error;
  }
  s.rows = std::move(rows);
  return s;
}

nlohmann::ordered_json to_json(const CorpusSummary& s) {
  nlohmann::ordered_json j;
  j["files"] = nlohmann::ordered_json::array();
  for (const auto& r : s.rows) j["files"].push_back(to_json(r));
  j["total"] = s.rows.size();
  j["semantic"] = s.semantic;
  j["baseline"] = s.baseline;
  j["union"] = s.either;
  j["errors"] = s.errors;
  return j;
}

std::string summary_table(const CorpusSummary& s) {
  std::ostringstream out;
  auto cell = [&](const std::string& text, std::size_t width) {
    out << text;
    for (std::size_t i = text.size(); i < width; ++i) out << ' ';
  };
  std::size_t name_width = 4;
  for (const auto& r : s.rows) {
    name_width = std::max(name_width, std::filesystem::path(r.input_path).filename().string().size());
  }
  name_width += 2;
  cell("file", name_width);
  cell("semantic", 34);
  cell("baseline", 22);
  cell("iters", 7);
  out << "ms\n";
  for (const auto& r : s.rows) {
    cell(std::filesystem::path(r.input_path).filename().string(), name_width);
    std::string semantic = r.outcome == Outcome::Refactored
                               ? "Refactored (length " + std::to_string(r.length) + ")"
                               : std::string(to_string(r.outcome)) + " (" + r.reason + ")";
    cell(semantic, 34);
    cell(r.baseline_pattern ? *r.baseline_pattern : "NoMatch", 22);
    cell(std::to_string(r.iterations), 7);
    out << r.elapsed_ms << "\n";
  }
  std::size_t n = s.rows.size();
  out << "semantic " << s.semantic << "/" << n << ", baseline " << s.baseline << "/" << n
      << ", union " << s.either << "/" << n << ", errors " << s.errors << "\n";
  return out.str();
}

}  // namespace streamline::cli
