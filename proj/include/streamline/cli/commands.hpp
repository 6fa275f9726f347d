#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>

#include "streamline/cegis/synthesize.hpp"
#include "streamline/cli/report.hpp"

namespace streamline::cli {

enum class Emit { Java, Pipeline, Both };

struct Options {
  double timeout_seconds = 300;
  int max_list_len = 4;
  std::int32_t lo = -3;
  std::int32_t hi = 3;
  bool aliasing = true;
  std::uint64_t seed = 0;
  bool ga = true;
  vcgen::Mode mode = vcgen::Mode::Equivalence;
  Emit emit = Emit::Java;
  std::string json_path;
  int jobs = 1;
  bool verbose = false;
  bool timing = true;       // false reports elapsedMs as 0
  std::string out_dir;      // empty: next to the input
  bool write_files = true;

  heap::Bounds bounds() const;
  cegis::SearchConfig config() const;
};

// Parses `lo..hi`; throws std::invalid_argument.
std::pair<std::int32_t, std::int32_t> parse_value_range(const std::string& text);

// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitNoRefactoring = 2;

// Compiles, synthesizes and emits one file, writing the output files.
// Frontend errors propagate; `progress` receives the iteration log.
RefactorReport refactor_file(const std::filesystem::path& path, const Options& opts,
                             std::ostream* progress = nullptr);

int cmd_refactor(const std::filesystem::path& path, const Options& opts, std::ostream& out,
                 std::ostream& err);

// Every *.minij file of `dir`; a file that fails to compile becomes an
// Error row.
CorpusSummary run_corpus(const std::filesystem::path& dir, const Options& opts,
                         std::ostream* progress = nullptr);

int cmd_corpus(const std::filesystem::path& dir, const Options& opts, std::ostream& out,
               std::ostream& err);

// Checks a hand-written pipeline file against the program.
int cmd_verify(const std::filesystem::path& program, const std::filesystem::path& pipelines,
               const Options& opts, std::ostream& out, std::ostream& err);

// Prints the lowered program.
int cmd_ir(const std::filesystem::path& path, std::ostream& out, std::ostream& err);

}  // namespace streamline::cli
