#pragma once

#include <filesystem>
#include <string>

#include "streamline/frontend/ir.hpp"

namespace streamline::testing {

std::filesystem::path source_dir();
std::filesystem::path corpus_path(const std::string& stem);
std::string read_text(const std::filesystem::path& path);
ir::Program compile_corpus(const std::string& stem);

}  // namespace streamline::testing
