#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "streamline/frontend/ir.hpp"
#include "streamline/vcgen/candidate.hpp"

namespace streamline::codegen {

class StreamReadError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Reads Java produced by emit() back into a candidate for `p`: the stream
// chains become pipelines and the clear/re-add blocks in-place outputs.
// Accepts only the statement shapes emit() writes.
vcgen::Candidate read_stream_java(const ir::Program& p, std::string_view java);

}  // namespace streamline::codegen
