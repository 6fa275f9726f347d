#include "streamline/cegis/enumerative.hpp"

#include <cstring>
#include <unordered_set>

namespace streamline::cegis {

const char* to_string(SearchStatus s) {
  switch (s) {
    case SearchStatus::Found: return "Found";
    case SearchStatus::Exhausted: return "Exhausted";
    case SearchStatus::Stopped: return "Stopped";
  }
  return "?";
}

std::vector<std::vector<int>> compositions(int total, std::size_t parts) {
  std::vector<std::vector<int>> out;
  if (parts == 0) {
    if (total == 0) out.emplace_back();
    return out;
  }
  std::vector<int> cur(parts, 0);
  auto rec = [&](auto&& self, std::size_t i, int left) -> void {
    if (i + 1 == parts) {
      cur[i] = left;
      out.push_back(cur);
      return;
    }
    for (int k = left; k >= 0; --k) {
      cur[i] = k;
      self(self, i + 1, left - k);
    }
  };
  rec(rec, 0, total);
  return out;
}

namespace {

using Seqs = std::vector<std::vector<std::int32_t>>;

std::string key_of(int depth, const Seqs& seqs) {
  std::string k;
  k.push_back(static_cast<char>(depth));
  for (const auto& s : seqs) {
    std::uint32_t n = static_cast<std::uint32_t>(s.size());
    k.append(reinterpret_cast<const char*>(&n), sizeof n);
    k.append(reinterpret_cast<const char*>(s.data()), s.size() * sizeof(std::int32_t));
  }
  return k;
}

class Dfs {
 public:
  Dfs(const Grammar& g, const CexSet& cex, std::size_t output, ir::OutputKind kind, int stages,
      std::stop_token stop, std::uint64_t& explored)
      : g_(g), cex_(cex), output_(output), kind_(kind), stages_(stages), stop_(std::move(stop)),
        explored_(explored) {}

  bool stopped() const { return stopped_; }

  std::optional<jst::Pipeline> run(const std::string& source) {
    Seqs seqs;
    for (const auto& in : cex_.inputs()) seqs.push_back(in.list(source));
    chosen_.clear();
    if (!seen_.insert(key_of(0, seqs)).second) return std::nullopt;
    if (!expand(0, seqs)) return std::nullopt;
    jst::Pipeline p;
    p.source = source;
    p.stages = chosen_;
    p.terminal = terminal_;
    return p;
  }

 private:
  const jst::Value& expected(std::size_t i) const { return cex_.expected()[i][output_]; }

  bool apply(const jst::Stage& st, const Seqs& from, Seqs& to, std::size_t i) const {
    to[i] = from[i];
    try {
      jst::apply_stage(st, to[i], cex_.inputs()[i]);
    } catch (const jst::JstError&) {
      return false;
    }
    return true;
  }

  bool finish(const Seqs& seqs) {
    if (ir::is_list(kind_)) {
      for (std::size_t i = 0; i < seqs.size(); ++i) {
        if (seqs[i] != expected(i).list) return false;
      }
      terminal_.reset();
      return true;
    }
    for (const auto& t : g_.terminals(kind_)) {
      bool ok = true;
      for (std::size_t i = 0; i < seqs.size() && ok; ++i) {
        ok = jst::apply_terminal(t, seqs[i]) == expected(i).scalar;
      }
      if (ok) {
        terminal_ = t;
        return true;
      }
    }
    return false;
  }

  bool expand(int depth, const Seqs& seqs) {
    if (depth == stages_) return finish(seqs);
    ++explored_;
    if ((explored_ & 1023) == 0 && stop_.stop_requested()) {
      stopped_ = true;
      return false;
    }
    bool last_list = ir::is_list(kind_) && depth + 1 == stages_;
    Seqs next(seqs.size());
    for (const auto& st : g_.stages()) {
      bool ok = true;
      if (last_list) {
        for (std::size_t i = 0; i < seqs.size() && ok; ++i) {
          ok = apply(st, seqs, next, i) && next[i] == expected(i).list;
        }
        if (ok) {
          chosen_.push_back(st);
          terminal_.reset();
          return true;
        }
        continue;
      }
      for (std::size_t i = 0; i < seqs.size() && ok; ++i) ok = apply(st, seqs, next, i);
      if (!ok) continue;
      if (!seen_.insert(key_of(depth + 1, next)).second) continue;
      chosen_.push_back(st);
      if (expand(depth + 1, next)) return true;
      chosen_.pop_back();
      if (stopped_) return false;
    }
    return false;
  }

  const Grammar& g_;
  const CexSet& cex_;
  std::size_t output_;
  ir::OutputKind kind_;
  int stages_;
  std::stop_token stop_;
  std::uint64_t& explored_;
  bool stopped_ = false;
  std::unordered_set<std::string> seen_;
  std::vector<jst::Stage> chosen_;
  std::optional<jst::Terminal> terminal_;
};

}  // namespace

std::optional<jst::Pipeline> Enumerator::first_pipeline(std::size_t output, int length,
                                                        const CexSet& cex, std::stop_token stop,
                                                        bool& stopped) {
  stopped = false;
  const ir::Output& o = p_.outputs[output];
  if (length == 0) {
    jst::Pipeline trivial;
    for (std::size_t i = 0; i < cex.size(); ++i) {
      if (vcgen::output_value(o, trivial, cex.inputs()[i]) != cex.expected()[i][output]) {
        return std::nullopt;
      }
    }
    return trivial;
  }
  int stages = ir::is_list(o.kind) ? length : length - 1;
  Dfs dfs(g_, cex, output, o.kind, stages, stop, explored_);
  for (const auto& source : g_.lists()) {
    auto found = dfs.run(source);
    if (dfs.stopped()) {
      stopped = true;
      return std::nullopt;
    }
    if (found) return found;
  }
  return std::nullopt;
}

SearchOutcome Enumerator::search(const CexSet& cex, int length, std::stop_token stop) {
  if (cached_for_ != cex.size()) {
    cache_.clear();
    cached_for_ = cex.size();
  }
  explored_ = 0;
  SearchOutcome out;
  for (const auto& split : compositions(length, p_.outputs.size())) {
    vcgen::Candidate c;
    bool complete = true;
    for (std::size_t o = 0; o < split.size() && complete; ++o) {
      auto key = std::make_pair(o, split[o]);
      auto it = cache_.find(key);
      if (it == cache_.end()) {
        bool stopped = false;
        auto found = first_pipeline(o, split[o], cex, stop, stopped);
        if (stopped) {
          out.status = SearchStatus::Stopped;
          out.explored = explored_;
          return out;
        }
        it = cache_.emplace(key, std::move(found)).first;
      }
      if (!it->second) {
        complete = false;
      } else {
        c.post[p_.outputs[o].name] = *it->second;
      }
    }
    if (complete) {
      c.inv = vcgen::derive_invariants(p_, c.post);
      out.status = SearchStatus::Found;
      out.candidate = std::move(c);
      out.explored = explored_;
      return out;
    }
  }
  out.status = SearchStatus::Exhausted;
  out.explored = explored_;
  return out;
}

SearchOutcome search_enumerative(const ir::Program& p, const Grammar& g, const CexSet& cex,
                                 int length, std::stop_token stop) {
  Enumerator e(p, g);
  return e.search(cex, length, std::move(stop));
}

}  // namespace streamline::cegis
