#include "corpus.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "streamline/frontend/lower.hpp"

namespace streamline::testing {

std::filesystem::path source_dir() { return STREAMLINE_SOURCE_DIR; }

std::filesystem::path corpus_path(const std::string& stem) {
  return source_dir() / "corpus" / (stem + ".minij");
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ir::Program compile_corpus(const std::string& stem) {
  return frontend::compile(read_text(corpus_path(stem)));
}

}  // namespace streamline::testing
