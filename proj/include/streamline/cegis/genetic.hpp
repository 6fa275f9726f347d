#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <stop_token>
#include <vector>

#include "streamline/cegis/grammar.hpp"
#include "streamline/vcgen/candidate.hpp"

namespace streamline::cegis {

// One pipeline position: which operation, which lambda, which constant.
// Indices are reduced modulo the size of the pool they select from.
struct Gene {
  std::uint32_t opcode = 0;
  std::uint32_t lambda = 0;
  std::uint32_t constant = 0;
  friend bool operator==(const Gene&, const Gene&) = default;
};

// A length-l candidate: how l splits over the outputs, a source list per
// output and l genes per output of which the first split[o] are used.
struct Genome {
  std::uint32_t composition = 0;
  std::vector<std::uint32_t> sources;
  std::vector<std::vector<Gene>> genes;
  friend bool operator==(const Genome&, const Genome&) = default;
};

enum class GeneticStatus { Found, NoProgress, Stopped };

struct GeneticOutcome {
  GeneticStatus status = GeneticStatus::NoProgress;
  std::optional<vcgen::Candidate> candidate;
  int generations = 0;
};

// max(1, round(rate * population)).
int replacement_count(int population, double rate);

class GeneticSearch {
 public:
  GeneticSearch(const ir::Program& p, const Grammar& g, const SearchConfig& cfg, int length);

  // Every genome decodes to a well-typed candidate of total length l.
  vcgen::Candidate decode(const Genome& genome) const;
  Genome random_genome(std::mt19937_64& rng) const;

  // Steady-state evolution for at most cfg.ga_generations generations.
  // `yield` is polled between generations; returning true stops the run.
  GeneticOutcome run(const CexSet& cex, std::stop_token stop = {},
                     const std::function<bool()>& yield = {});

 private:
  struct Individual {
    Genome genome;
    std::vector<bool> solved;
    std::size_t fitness = 0;
  };

  vcgen::Candidate decode_post(const Genome& genome) const;
  Individual evaluate(Genome genome, const CexSet& cex) const;
  Genome crossover(const Genome& a, const Genome& b, std::mt19937_64& rng) const;
  void mutate(Genome& g, std::mt19937_64& rng) const;
  std::size_t pick_first(const std::vector<Individual>& pop, std::mt19937_64& rng) const;
  std::size_t pick_second(const std::vector<Individual>& pop, std::size_t first,
                          std::mt19937_64& rng) const;

  const ir::Program& p_;
  const Grammar& g_;
  SearchConfig cfg_;
  int length_;
  std::vector<std::vector<int>> splits_;
};

}  // namespace streamline::cegis
