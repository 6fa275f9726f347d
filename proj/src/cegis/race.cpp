#include "streamline/cegis/race.hpp"

#include <thread>

namespace streamline::cegis {

const char* to_string(Strategy s) {
  return s == Strategy::Enumerative ? "enumerative" : "genetic";
}

QuantumClock steady_quantum_clock(std::chrono::milliseconds quantum) {
  return [quantum]() {
    auto t = std::chrono::steady_clock::now().time_since_epoch();
    return static_cast<std::uint64_t>(t / quantum);
  };
}

bool ResultCell::post(Strategy who, vcgen::Candidate c) {
  std::uint64_t q = clock_();
  std::lock_guard lock(mu_);
  if (candidate_) {
    bool tie = who == Strategy::Enumerative && who_ == Strategy::Genetic && q == quantum_;
    if (!tie) return false;
  }
  candidate_ = std::move(c);
  who_ = who;
  quantum_ = q;
  return true;
}

bool ResultCell::has_result() const {
  std::lock_guard lock(mu_);
  return candidate_.has_value();
}

std::optional<std::pair<Strategy, vcgen::Candidate>> ResultCell::result() const {
  std::lock_guard lock(mu_);
  if (!candidate_) return std::nullopt;
  return std::make_pair(who_, *candidate_);
}

std::optional<std::uint64_t> ResultCell::quantum() const {
  std::lock_guard lock(mu_);
  if (!candidate_) return std::nullopt;
  return quantum_;
}

RaceOutcome race_searches(Enumerator& enumerator, const ir::Program& p, const Grammar& g,
                          const CexSet& cex, int length, const SearchConfig& cfg,
                          std::stop_token stop, QuantumClock clock) {
  ResultCell cell(clock ? std::move(clock) : steady_quantum_clock());
  std::stop_source enum_stop;
  std::stop_callback forward(stop, [&] { enum_stop.request_stop(); });
  RaceOutcome out;

  std::jthread worker;
  int generations = 0;
  if (cfg.ga_enabled && length > 0) {
    worker = std::jthread([&](std::stop_token st) {
      GeneticSearch ga(p, g, cfg, length);
      GeneticOutcome r = ga.run(cex, st);
      generations = r.generations;
      if (r.status != GeneticStatus::Found || !cell.post(Strategy::Genetic, *r.candidate)) return;
      // Give the enumerative search the rest of the quantum to tie.
      std::uint64_t q = *cell.quantum();
      while (!st.stop_requested() && cell.now() <= q) {
        std::this_thread::sleep_for(std::chrono::milliseconds(1));
      }
      if (!st.stop_requested()) enum_stop.request_stop();
    });
  }

  std::optional<std::stop_callback<std::function<void()>>> forward_ga;
  if (worker.joinable()) forward_ga.emplace(stop, [&] { worker.request_stop(); });

  SearchOutcome e = enumerator.search(cex, length, enum_stop.get_token());
  out.explored = e.explored;
  if (e.status == SearchStatus::Found) cell.post(Strategy::Enumerative, *e.candidate);
  if (worker.joinable()) {
    worker.request_stop();
    worker.join();
  }
  forward_ga.reset();
  out.ga_generations = generations;
  if (auto r = cell.result()) {
    out.status = SearchStatus::Found;
    out.winner = r->first;
    out.candidate = std::move(r->second);
    return out;
  }
  out.status = e.status;
  return out;
}

}  // namespace streamline::cegis
