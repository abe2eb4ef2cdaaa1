#include "analogen/sme.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <unordered_set>

#include "analogen/error.hpp"

namespace analogen {

using nlohmann::json;

std::vector<MatchHypothesis> enumerate_hypotheses(const SemanticNetwork& base,
                                                  const SemanticNetwork& target) {
  std::map<RelationLabel, std::vector<const Relation*>> target_by_label;
  for (const auto& t : target.relations()) target_by_label[t.label].push_back(&t);
  std::vector<MatchHypothesis> out;
  for (const auto& b : base.relations()) {
    auto it = target_by_label.find(b.label);
    if (it == target_by_label.end()) continue;
    for (const auto* t : it->second) out.push_back({b, *t});
  }
  return out;  // base relations and per-label targets are both iterated in order
}

namespace {

// Builds the concept mapping; returns false on any conflict.
bool build_mapping(std::span<const MatchHypothesis> hyps, std::map<Concept, Concept>& fwd,
                   std::map<Concept, Concept>& back) {
  std::set<Relation> used_base, used_target;
  for (const auto& h : hyps) {
    if (h.base.label != h.target.label) return false;
    if (!used_base.insert(h.base).second || !used_target.insert(h.target).second) return false;
    const std::array<std::pair<const Concept*, const Concept*>, 2> ends = {
        std::pair{&h.base.head, &h.target.head}, std::pair{&h.base.tail, &h.target.tail}};
    for (auto [b, t] : ends) {
      auto [fi, fnew] = fwd.try_emplace(*b, *t);
      if (!fnew && fi->second != *t) return false;
      auto [bi, bnew] = back.try_emplace(*t, *b);
      if (!bnew && bi->second != *b) return false;
    }
  }
  return true;
}

}  // namespace

bool consistent(std::span<const MatchHypothesis> hyps) {
  std::map<Concept, Concept> fwd, back;
  return build_mapping(hyps, fwd, back);
}

std::vector<ConceptCorrespondence> induced_correspondences(std::span<const MatchHypothesis> hyps) {
  std::map<Concept, Concept> fwd, back;
  if (!build_mapping(hyps, fwd, back))
    throw Error(ErrorCode::InvalidArgument, "inconsistent match hypotheses");
  std::vector<ConceptCorrespondence> out;
  out.reserve(fwd.size());
  for (auto& [b, t] : fwd) out.push_back({b, t});
  return out;
}

std::size_t adjacent_pairs(std::span<const MatchHypothesis> hyps) {
  std::map<Concept, Concept> fwd, back;
  build_mapping(hyps, fwd, back);
  std::size_t n = 0;
  for (std::size_t i = 0; i < hyps.size(); ++i) {
    for (std::size_t j = i + 1; j < hyps.size(); ++j) {
      const auto& x = hyps[i];
      const auto& y = hyps[j];
      for (const auto* c : {&x.base.head, &x.base.tail}) {
        if (!y.base.involves(*c)) continue;
        auto it = fwd.find(*c);
        if (it != fwd.end() && x.target.involves(it->second) && y.target.involves(it->second)) {
          ++n;
          break;
        }
      }
    }
  }
  return n;
}

GMap make_gmap(std::vector<MatchHypothesis> hyps, const ScoreWeights& w) {
  std::sort(hyps.begin(), hyps.end());
  GMap g;
  g.correspondences = induced_correspondences(hyps);
  g.adjacent_pairs = adjacent_pairs(hyps);
  g.hypotheses = std::move(hyps);
  g.score = static_cast<double>(g.hypotheses.size()) * w.w_base + static_cast<double>(g.adjacent_pairs) * w.w_conn;
  return g;
}

double score(const GMap& gmap, const ScoreWeights& w) {
  if (!consistent(gmap.hypotheses)) throw Error(ErrorCode::InvalidArgument, "inconsistent gmap");
  return static_cast<double>(gmap.hypotheses.size()) * w.w_base +
         static_cast<double>(adjacent_pairs(gmap.hypotheses)) * w.w_conn;
}

namespace {

constexpr double kScoreEps = 1e-12;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Integer view of one matching problem. Concept ids follow sorted label order
// on each side, so comparing id pairs compares correspondence tables.
struct Problem {
  std::vector<Relation> base_rels, target_rels;
  std::vector<std::array<int, 2>> base_ends, target_ends;
  std::size_t base_concepts = 0, target_concepts = 0;
  std::vector<MatchHypothesis> hyps;
  std::vector<int> hyp_base, hyp_target;
  std::vector<std::vector<int>> by_base;
  std::vector<std::vector<char>> base_adj;

  Problem(const SemanticNetwork& base, const SemanticNetwork& target) {
    auto index = [](const SemanticNetwork& net, std::vector<Relation>& rels,
                    std::vector<std::array<int, 2>>& ends, std::size_t& count) {
      std::map<Concept, int> id;
      for (const auto& c : net.concepts()) id.emplace(c, static_cast<int>(id.size()));
      count = id.size();
      rels.assign(net.relations().begin(), net.relations().end());
      for (const auto& r : rels) ends.push_back({id.at(r.head), id.at(r.tail)});
    };
    index(base, base_rels, base_ends, base_concepts);
    index(target, target_rels, target_ends, target_concepts);

    by_base.resize(base_rels.size());
    for (std::size_t i = 0; i < base_rels.size(); ++i) {
      for (std::size_t j = 0; j < target_rels.size(); ++j) {
        if (base_rels[i].label != target_rels[j].label) continue;
        by_base[i].push_back(static_cast<int>(hyps.size()));
        hyps.push_back({base_rels[i], target_rels[j]});
        hyp_base.push_back(static_cast<int>(i));
        hyp_target.push_back(static_cast<int>(j));
      }
    }
    base_adj.assign(base_rels.size(), std::vector<char>(base_rels.size(), 0));
    for (std::size_t i = 0; i < base_rels.size(); ++i)
      for (std::size_t j = i + 1; j < base_rels.size(); ++j) {
        const auto& a = base_ends[i];
        const auto& b = base_ends[j];
        bool shared = a[0] == b[0] || a[0] == b[1] || a[1] == b[0] || a[1] == b[1];
        base_adj[i][j] = base_adj[j][i] = shared;
      }
  }
};

struct State {
  std::vector<int> fwd, back, refs;
  std::vector<char> base_used, target_used;
  std::vector<int> chosen;
  std::size_t adjacent = 0;
  std::uint64_t key = 0;

  explicit State(const Problem& p)
      : fwd(p.base_concepts, -1),
        back(p.target_concepts, -1),
        refs(p.base_concepts, 0),
        base_used(p.base_rels.size(), 0),
        target_used(p.target_rels.size(), 0) {}

  bool can_add(const Problem& p, int h) const {
    int bi = p.hyp_base[h], ti = p.hyp_target[h];
    if (base_used[bi] || target_used[ti]) return false;
    for (int k = 0; k < 2; ++k) {
      int bc = p.base_ends[bi][k], tc = p.target_ends[ti][k];
      if (fwd[bc] == -1) {
        if (back[tc] != -1) return false;
      } else if (fwd[bc] != tc) {
        return false;
      }
    }
    return true;
  }

  std::size_t gain(const Problem& p, int h) const {
    std::size_t g = 0;
    for (int c : chosen) g += p.base_adj[p.hyp_base[h]][p.hyp_base[c]];
    return g;
  }

  void add(const Problem& p, int h) {
    adjacent += gain(p, h);
    int bi = p.hyp_base[h], ti = p.hyp_target[h];
    base_used[bi] = target_used[ti] = 1;
    for (int k = 0; k < 2; ++k) {
      int bc = p.base_ends[bi][k], tc = p.target_ends[ti][k];
      fwd[bc] = tc;
      back[tc] = bc;
      ++refs[bc];
    }
    chosen.push_back(h);
    key ^= splitmix64(static_cast<std::uint64_t>(h));
  }

  void remove_last(const Problem& p) {
    int h = chosen.back();
    chosen.pop_back();
    key ^= splitmix64(static_cast<std::uint64_t>(h));
    int bi = p.hyp_base[h], ti = p.hyp_target[h];
    base_used[bi] = target_used[ti] = 0;
    for (int k = 0; k < 2; ++k) {
      int bc = p.base_ends[bi][k];
      if (--refs[bc] == 0) {
        back[fwd[bc]] = -1;
        fwd[bc] = -1;
      }
    }
    adjacent -= gain(p, h);
  }

  double score(const ScoreWeights& w) const {
    return static_cast<double>(chosen.size()) * w.w_base + static_cast<double>(adjacent) * w.w_conn;
  }

  std::vector<std::pair<int, int>> table() const {
    std::vector<std::pair<int, int>> t;
    for (std::size_t c = 0; c < fwd.size(); ++c)
      if (fwd[c] != -1) t.emplace_back(static_cast<int>(c), fwd[c]);
    return t;
  }
};

struct Incumbent {
  double score = 0.0;
  std::size_t count = 0;
  std::vector<std::pair<int, int>> table;
  std::vector<int> chosen;

  // Higher score, then more hypotheses, then smaller correspondence table.
  bool improve(const State& s, const ScoreWeights& w) {
    double sc = s.score(w);
    if (sc < score - kScoreEps) return false;
    if (sc <= score + kScoreEps) {
      if (s.chosen.size() < count) return false;
      if (s.chosen.size() == count) {
        auto t = s.table();
        if (!(t < table)) return false;
        score = sc;
        table = std::move(t);
        chosen = s.chosen;
        return true;
      }
    }
    score = sc;
    count = s.chosen.size();
    table = s.table();
    chosen = s.chosen;
    return true;
  }
};

class ExactSearch {
 public:
  ExactSearch(const Problem& p, const ScoreWeights& w) : p_(p), w_(w), state_(p) {
    std::size_t n = p.base_rels.size();
    suffix_count_.assign(n + 1, 0);
    suffix_degree_.assign(n + 1, 0);
    std::vector<char> matchable(n);
    for (std::size_t i = 0; i < n; ++i) matchable[i] = !p.by_base[i].empty();
    for (std::size_t i = n; i-- > 0;) {
      std::size_t deg = 0;
      for (std::size_t j = 0; j < n; ++j)
        if (j != i && matchable[j]) deg += p.base_adj[i][j];
      suffix_count_[i] = suffix_count_[i + 1] + matchable[i];
      suffix_degree_[i] = suffix_degree_[i + 1] + (matchable[i] ? deg : 0);
    }
  }

  Incumbent run() {
    dfs(0);
    return best_;
  }

 private:
  void dfs(std::size_t i) {
    if (i == p_.base_rels.size() || suffix_count_[i] == 0) {
      best_.improve(state_, w_);
      return;
    }
    std::size_t n = state_.chosen.size();
    std::size_t k = std::min(suffix_count_[i], p_.target_rels.size() - n);
    std::size_t m = n + k;
    std::size_t adj_cap = std::min(state_.adjacent + suffix_degree_[i], m * (m - (m > 0)) / 2);
    double bound = static_cast<double>(m) * w_.w_base + static_cast<double>(adj_cap) * w_.w_conn;
    if (bound < best_.score - kScoreEps) return;

    for (int h : p_.by_base[i]) {
      if (!state_.can_add(p_, h)) continue;
      state_.add(p_, h);
      dfs(i + 1);
      state_.remove_last(p_);
    }
    dfs(i + 1);
  }

  const Problem& p_;
  const ScoreWeights& w_;
  State state_;
  Incumbent best_;
  std::vector<std::size_t> suffix_count_, suffix_degree_;
};

Incumbent beam_search(const Problem& p, const ScoreWeights& w, std::size_t width) {
  Incumbent best;
  std::vector<State> beam{State(p)};
  best.improve(beam.front(), w);

  struct Candidate {
    std::size_t parent;
    int hyp;
    double score;
    std::uint64_t key;
  };
  const int hyp_count = static_cast<int>(p.hyps.size());
  while (!beam.empty()) {
    std::vector<Candidate> candidates;
    std::unordered_set<std::uint64_t> seen;
    for (std::size_t s = 0; s < beam.size(); ++s) {
      const auto& st = beam[s];
      double base_score = st.score(w);
      for (int h = 0; h < hyp_count; ++h) {
        if (!st.can_add(p, h)) continue;
        std::uint64_t key = st.key ^ splitmix64(static_cast<std::uint64_t>(h));
        if (!seen.insert(key).second) continue;
        double sc = base_score + w.w_base + static_cast<double>(st.gain(p, h)) * w.w_conn;
        candidates.push_back({s, h, sc, key});
      }
    }
    if (candidates.empty()) break;
    std::sort(candidates.begin(), candidates.end(), [](const Candidate& a, const Candidate& b) {
      if (std::abs(a.score - b.score) > kScoreEps) return a.score > b.score;
      return a.key < b.key;
    });
    if (candidates.size() > width) candidates.resize(width);
    std::vector<State> next;
    next.reserve(candidates.size());
    for (const auto& c : candidates) {
      State st = beam[c.parent];
      st.add(p, c.hyp);
      best.improve(st, w);
      next.push_back(std::move(st));
    }
    beam = std::move(next);
  }
  return best;
}

}  // namespace

MappingResult best_gmap(const SemanticNetwork& base, const SemanticNetwork& target, const ScoreWeights& w,
                        const SearchLimits& limits) {
  Problem p(base, target);
  MappingResult result;
  result.hypothesis_count = p.hyps.size();
  result.exact = p.hyps.size() <= limits.exact_limit;
  Incumbent best = result.exact ? ExactSearch(p, w).run()
                                : beam_search(p, w, std::max<std::size_t>(limits.beam_width, 1));

  std::vector<MatchHypothesis> hyps;
  for (int h : best.chosen) hyps.push_back(p.hyps[h]);
  result.best = make_gmap(std::move(hyps), w);
  result.fitness = result.best.score;
  result.correspondence_table = result.best.correspondences;
  return result;
}

double fitness(const SemanticNetwork& base, const SemanticNetwork& individual, const ScoreWeights& w,
               const SearchLimits& limits) {
  return best_gmap(base, individual, w, limits).fitness;
}

json mapping_report(const MappingResult& result, const ScoreWeights& w) {
  auto rel = [](const Relation& r) { return json{{"label", r.label}, {"head", r.head}, {"tail", r.tail}}; };
  json corr = json::array();
  for (const auto& c : result.correspondence_table) corr.push_back({{"base", c.base}, {"target", c.target}});
  json matches = json::array();
  for (const auto& h : result.best.hypotheses) matches.push_back({{"base", rel(h.base)}, {"target", rel(h.target)}});
  const auto n = result.best.hypotheses.size();
  const auto a = result.best.adjacent_pairs;
  return {
      {"exact", result.exact},
      {"fitness", result.fitness},
      {"score_terms",
       {{"base", static_cast<double>(n) * w.w_base},
        {"connectivity", static_cast<double>(a) * w.w_conn},
        {"matched_relations", n},
        {"adjacent_pairs", a}}},
      {"weights", {{"w_base", w.w_base}, {"w_conn", w.w_conn}}},
      {"hypothesis_count", result.hypothesis_count},
      {"correspondences", std::move(corr)},
      {"matches", std::move(matches)},
  };
}

}  // namespace analogen
