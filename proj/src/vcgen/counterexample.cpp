#include "streamline/vcgen/counterexample.hpp"

#include "streamline/heap/snapshot.hpp"

namespace streamline::vcgen {

std::string state_key(const heap::ProgramState& s) {
  return heap::state_snapshot(s).dump();
}

nlohmann::json counterexample_json(const Counterexample& cex,
                                   const std::vector<heap::ParamSpec>& params) {
  nlohmann::json j;
  j["constructors"] = heap::constructors(cex.pre, params);
  j["failedVC"] = cex.failed_vc;
  j["expected"] = heap::state_snapshot(cex.expected);
  j["actual"] = heap::state_snapshot(cex.actual);
  j["index"] = cex.index;
  if (!cex.detail.empty()) j["detail"] = cex.detail;
  return j;
}

}  // namespace streamline::vcgen
