#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "streamline/frontend/ir.hpp"
#include "streamline/vcgen/candidate.hpp"

namespace streamline::codegen {

class UntranslatableOp : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct EmitRecord {
  std::string output;    // ir::Output::name
  std::string target;    // Java variable receiving the result
  std::string pipeline;  // pipeline text
  bool in_place = false;
};

// What emit() will write: results computed from the unmodified inputs
// first, then snapshots of every list read by an in-place pipeline, then
// the clear/re-add blocks.
struct EmitPlan {
  std::vector<EmitRecord> records;              // emission order
  std::map<std::string, std::string> copies;    // list -> snapshot variable
  std::map<std::string, std::string> sizes;     // list -> hoisted size
  std::vector<std::string> preamble;            // snapshot declarations
  std::string lambda_var = "el";
};

EmitPlan plan_emission(const ir::Program& p, const vcgen::Candidate& c);

// Method declaration with a replaced body, preceded by a comment listing
// the imports the body needs.
std::string emit(const ir::Program& p, const vcgen::Candidate& c);

// Java literal for an int, spelling out the extremes.
std::string java_int(std::int32_t v);

}  // namespace streamline::codegen
