#include "streamline/cegis/genetic.hpp"

#include <algorithm>
#include <cmath>

#include "streamline/cegis/enumerative.hpp"

namespace streamline::cegis {

int replacement_count(int population, double rate) {
  return std::max(1, static_cast<int>(std::lround(rate * population)));
}

GeneticSearch::GeneticSearch(const ir::Program& p, const Grammar& g, const SearchConfig& cfg,
                             int length)
    : p_(p), g_(g), cfg_(cfg), length_(length), splits_(compositions(length, p.outputs.size())) {}

namespace {

template <typename T>
const T& pick(const std::vector<T>& pool, std::uint32_t i) {
  return pool[i % pool.size()];
}

constexpr jst::StageKind kStageKinds[] = {
    jst::StageKind::Filter, jst::StageKind::Map,    jst::StageKind::Sorted, jst::StageKind::Skip,
    jst::StageKind::Limit,  jst::StageKind::Append, jst::StageKind::Concat};

jst::Stage decode_stage(const Grammar& g, const Gene& gene) {
  jst::Stage s;
  s.kind = kStageKinds[gene.opcode % std::size(kStageKinds)];
  switch (s.kind) {
    case jst::StageKind::Filter: s.pred = pick(g.predicates(), gene.lambda); break;
    case jst::StageKind::Map: s.mapper = pick(g.mappers(), gene.lambda); break;
    case jst::StageKind::Sorted: break;
    case jst::StageKind::Skip:
    case jst::StageKind::Limit: s.count = pick(g.counts(), gene.constant); break;
    case jst::StageKind::Append: s.value = pick(g.constants(), gene.constant); break;
    case jst::StageKind::Concat: s.other = pick(g.lists(), gene.constant); break;
  }
  return s;
}

jst::Terminal decode_terminal(const Grammar& g, ir::OutputKind kind, const Gene& gene) {
  jst::Terminal t;
  if (kind == ir::OutputKind::Boolean) {
    t.kind = gene.opcode % 2 == 0 ? jst::TerminalKind::AnyMatch : jst::TerminalKind::AllMatch;
    t.pred = pick(g.predicates(), gene.lambda);
    return t;
  }
  static constexpr jst::TerminalKind kInt[] = {jst::TerminalKind::Reduce, jst::TerminalKind::Min,
                                               jst::TerminalKind::Max, jst::TerminalKind::Count};
  t.kind = kInt[gene.opcode % std::size(kInt)];
  if (t.kind == jst::TerminalKind::Reduce) {
    static constexpr jst::AccumulatorKind kAcc[] = {
        jst::AccumulatorKind::Sum, jst::AccumulatorKind::Product, jst::AccumulatorKind::Min,
        jst::AccumulatorKind::Max};
    t.acc = {kAcc[gene.lambda % std::size(kAcc)]};
    t.identity = pick(g.constants(), gene.constant);
  }
  return t;
}

}  // namespace

vcgen::Candidate GeneticSearch::decode_post(const Genome& genome) const {
  vcgen::Candidate c;
  const auto& split = splits_[genome.composition % splits_.size()];
  for (std::size_t o = 0; o < p_.outputs.size(); ++o) {
    const ir::Output& out = p_.outputs[o];
    jst::Pipeline pipe;
    int len = split[o];
    if (len > 0) {
      pipe.source = pick(g_.lists(), genome.sources[o]);
      int stages = ir::is_list(out.kind) ? len : len - 1;
      for (int i = 0; i < stages; ++i) pipe.stages.push_back(decode_stage(g_, genome.genes[o][static_cast<std::size_t>(i)]));
      if (!ir::is_list(out.kind)) {
        pipe.terminal = decode_terminal(g_, out.kind, genome.genes[o][static_cast<std::size_t>(stages)]);
      }
    }
    c.post[out.name] = std::move(pipe);
  }
  return c;
}

vcgen::Candidate GeneticSearch::decode(const Genome& genome) const {
  vcgen::Candidate c = decode_post(genome);
  c.inv = vcgen::derive_invariants(p_, c.post);
  return c;
}

Genome GeneticSearch::random_genome(std::mt19937_64& rng) const {
  std::uniform_int_distribution<std::uint32_t> any;
  Genome g;
  g.composition = any(rng);
  for (std::size_t o = 0; o < p_.outputs.size(); ++o) {
    g.sources.push_back(any(rng));
    std::vector<Gene> genes;
    for (int i = 0; i < length_; ++i) genes.push_back({any(rng), any(rng), any(rng)});
    g.genes.push_back(std::move(genes));
  }
  return g;
}

GeneticSearch::Individual GeneticSearch::evaluate(Genome genome, const CexSet& cex) const {
  Individual ind;
  vcgen::Candidate c = decode_post(genome);
  ind.genome = std::move(genome);
  ind.solved.assign(cex.size(), false);
  for (std::size_t i = 0; i < cex.size(); ++i) {
    bool ok = true;
    for (std::size_t o = 0; o < p_.outputs.size() && ok; ++o) {
      try {
        ok = vcgen::output_value(p_.outputs[o], c.post.at(p_.outputs[o].name), cex.inputs()[i]) ==
             cex.expected()[i][o];
      } catch (const jst::JstError&) {
        ok = false;
      }
    }
    ind.solved[i] = ok;
    if (ok) ++ind.fitness;
  }
  return ind;
}

Genome GeneticSearch::crossover(const Genome& a, const Genome& b, std::mt19937_64& rng) const {
  std::bernoulli_distribution coin(0.5);
  Genome child = a;
  if (coin(rng)) child.composition = b.composition;
  for (std::size_t o = 0; o < child.genes.size(); ++o) {
    if (coin(rng)) child.sources[o] = b.sources[o];
    for (std::size_t i = 0; i < child.genes[o].size(); ++i) {
      if (coin(rng)) child.genes[o][i] = b.genes[o][i];
    }
  }
  return child;
}

void GeneticSearch::mutate(Genome& g, std::mt19937_64& rng) const {
  std::bernoulli_distribution hit(cfg_.ga_mutation_rate);
  std::uniform_int_distribution<std::uint32_t> any;
  if (hit(rng)) g.composition = any(rng);
  for (std::size_t o = 0; o < g.genes.size(); ++o) {
    if (hit(rng)) g.sources[o] = any(rng);
    for (auto& gene : g.genes[o]) {
      if (hit(rng)) gene.opcode = any(rng);
      if (hit(rng)) gene.lambda = any(rng);
      if (hit(rng)) gene.constant = any(rng);
    }
  }
}

std::size_t GeneticSearch::pick_first(const std::vector<Individual>& pop,
                                      std::mt19937_64& rng) const {
  std::uniform_int_distribution<std::size_t> idx(0, pop.size() - 1);
  std::size_t best = idx(rng);
  for (int k = 0; k < 2; ++k) {
    std::size_t c = idx(rng);
    if (pop[c].fitness > pop[best].fitness) best = c;
  }
  return best;
}

// Prefers a mate that solves counterexamples the first parent misses.
std::size_t GeneticSearch::pick_second(const std::vector<Individual>& pop, std::size_t first,
                                       std::mt19937_64& rng) const {
  std::uniform_int_distribution<std::size_t> idx(0, pop.size() - 1);
  auto complement = [&](std::size_t c) {
    std::size_t n = 0;
    for (std::size_t i = 0; i < pop[c].solved.size(); ++i) {
      if (pop[c].solved[i] && !pop[first].solved[i]) ++n;
    }
    return n;
  };
  std::size_t best = idx(rng);
  std::size_t best_score = complement(best);
  for (int k = 0; k < 3; ++k) {
    std::size_t c = idx(rng);
    std::size_t score = complement(c);
    if (score > best_score || (score == best_score && pop[c].fitness > pop[best].fitness)) {
      best = c;
      best_score = score;
    }
  }
  return best;
}

GeneticOutcome GeneticSearch::run(const CexSet& cex, std::stop_token stop,
                                  const std::function<bool()>& yield) {
  GeneticOutcome out;
  if (length_ <= 0 || g_.lists().empty()) return out;
  std::mt19937_64 rng(cfg_.seed * 0x9e3779b97f4a7c15ULL + static_cast<std::uint64_t>(length_) +
                      cex.size());
  std::vector<Individual> pop;
  pop.reserve(static_cast<std::size_t>(cfg_.ga_population));
  auto found = [&](const Individual& ind) {
    out.status = GeneticStatus::Found;
    out.candidate = decode(ind.genome);
    return out;
  };
  for (int i = 0; i < cfg_.ga_population; ++i) {
    pop.push_back(evaluate(random_genome(rng), cex));
    if (pop.back().fitness == cex.size()) return found(pop.back());
    if ((i & 127) == 0 && stop.stop_requested()) {
      out.status = GeneticStatus::Stopped;
      return out;
    }
  }
  int replace = replacement_count(cfg_.ga_population, cfg_.ga_replacement_rate);
  for (int gen = 1; gen <= cfg_.ga_generations; ++gen) {
    out.generations = gen;
    if (stop.stop_requested() || (yield && yield())) {
      out.status = GeneticStatus::Stopped;
      return out;
    }
    std::vector<Individual> children;
    for (int k = 0; k < replace; ++k) {
      std::size_t a = pick_first(pop, rng);
      std::size_t b = pick_second(pop, a, rng);
      Genome child = crossover(pop[a].genome, pop[b].genome, rng);
      mutate(child, rng);
      children.push_back(evaluate(std::move(child), cex));
      if (children.back().fitness == cex.size()) return found(children.back());
    }
    std::stable_sort(pop.begin(), pop.end(), [](const Individual& x, const Individual& y) {
      return x.fitness > y.fitness;
    });
    for (std::size_t k = 0; k < children.size() && k < pop.size(); ++k) {
      pop[pop.size() - 1 - k] = std::move(children[k]);
    }
  }
  out.status = GeneticStatus::NoProgress;
  return out;
}

}  // namespace streamline::cegis
