#pragma once

// Fixtures and reference oracles shared by the unit and acceptance tests.
// The oracles are deliberately naive and do not call into the code they check.

#include <algorithm>
#include <filesystem>
#include <initializer_list>
#include <iterator>
#include <map>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "analogen/kb.hpp"
#include "analogen/operators.hpp"
#include "analogen/rng.hpp"
#include "analogen/semnet.hpp"
#include "analogen/sme.hpp"

#ifndef ANALOGEN_DATA_DIR
#error "ANALOGEN_DATA_DIR must be defined"
#endif

namespace analogen::testing {

inline std::filesystem::path data_path(const std::string& name) {
  return std::filesystem::path(ANALOGEN_DATA_DIR) / name;
}

inline const KnowledgeBase& mini_kb() {
  static const KnowledgeBase kb = KnowledgeBase::load(data_path("mini_kb.tsv"), 2.0);
  return kb;
}

struct Triple {
  const char* label;
  const char* head;
  const char* tail;
  double score = 5.0;
};

inline KnowledgeBase kb_of(std::initializer_list<Triple> rows, double r_min = 2.0) {
  std::vector<ScoredAssertion> v;
  for (const auto& t : rows) v.push_back({{t.label, t.head, t.tail}, t.score});
  return KnowledgeBase::from_assertions(v, r_min);
}

inline SemanticNetwork net_of(std::initializer_list<Relation> rels,
                              std::initializer_list<Concept> extra = {}) {
  SemanticNetwork n;
  for (const auto& r : rels) n.add_relation(r);
  for (const auto& c : extra) n.add_concept(c);
  return n;
}

inline bool kb_valid(const SemanticNetwork& net, const KnowledgeBase& kb) {
  return std::all_of(net.relations().begin(), net.relations().end(),
                     [&](const Relation& r) { return kb.contains(r); });
}

/// Endpoint closure and no self-loops.
inline bool well_formed(const SemanticNetwork& net) {
  for (const auto& r : net.relations())
    if (r.head == r.tail || !net.has_concept(r.head) || !net.has_concept(r.tail)) return false;
  return true;
}

/// Component count by repeated flood fill over an adjacency map.
inline std::size_t component_count(const SemanticNetwork& net) {
  std::map<Concept, std::set<Concept>> adj;
  for (const auto& c : net.concepts()) adj[c];
  for (const auto& r : net.relations()) {
    adj[r.head].insert(r.tail);
    adj[r.tail].insert(r.head);
  }
  std::set<Concept> seen;
  std::size_t count = 0;
  for (const auto& [c, _] : adj) {
    if (seen.contains(c)) continue;
    ++count;
    std::vector<Concept> stack{c};
    seen.insert(c);
    while (!stack.empty()) {
      auto cur = stack.back();
      stack.pop_back();
      for (const auto& n : adj[cur])
        if (seen.insert(n).second) stack.push_back(n);
    }
  }
  return count;
}

/// Best systematicity score by enumerating every injective partial mapping of
/// base concepts onto target concepts. Under a fixed mapping the best gmap
/// keeps every base relation whose image is a target relation; adjacency is
/// then the number of matched base relation pairs sharing an endpoint.
class MappingOracle {
 public:
  MappingOracle(const SemanticNetwork& base, const SemanticNetwork& target, const ScoreWeights& w)
      : base_(base), target_(target), w_(w),
        bc_(base.concepts().begin(), base.concepts().end()),
        tc_(target.concepts().begin(), target.concepts().end()) {}

  double best() {
    best_ = 0.0;
    map_.assign(bc_.size(), -1);
    used_.assign(tc_.size(), false);
    visit(0);
    return best_;
  }

 private:
  void visit(std::size_t i) {
    if (i == bc_.size()) {
      best_ = std::max(best_, evaluate());
      return;
    }
    map_[i] = -1;
    visit(i + 1);
    for (std::size_t t = 0; t < tc_.size(); ++t) {
      if (used_[t]) continue;
      used_[t] = true;
      map_[i] = static_cast<int>(t);
      visit(i + 1);
      used_[t] = false;
    }
    map_[i] = -1;
  }

  const Concept* image(const Concept& c) const {
    auto it = std::lower_bound(bc_.begin(), bc_.end(), c);
    int t = map_[static_cast<std::size_t>(it - bc_.begin())];
    return t < 0 ? nullptr : &tc_[static_cast<std::size_t>(t)];
  }

  double evaluate() const {
    std::vector<const Relation*> matched;
    for (const auto& r : base_.relations()) {
      auto h = image(r.head);
      auto t = image(r.tail);
      if (h && t && target_.has_relation({r.label, *h, *t})) matched.push_back(&r);
    }
    std::size_t adjacent = 0;
    for (std::size_t i = 0; i < matched.size(); ++i)
      for (std::size_t j = i + 1; j < matched.size(); ++j)
        if (matched[i]->involves(matched[j]->head) || matched[i]->involves(matched[j]->tail)) ++adjacent;
    return static_cast<double>(matched.size()) * w_.w_base + static_cast<double>(adjacent) * w_.w_conn;
  }

  const SemanticNetwork& base_;
  const SemanticNetwork& target_;
  ScoreWeights w_;
  std::vector<Concept> bc_, tc_;
  std::vector<int> map_;
  std::vector<bool> used_;
  double best_ = 0.0;
};

inline double oracle_best_score(const SemanticNetwork& base, const SemanticNetwork& target,
                                const ScoreWeights& w = {}) {
  return MappingOracle(base, target, w).best();
}

/// Both directions of the correspondence table are functions.
inline bool bijective(const std::vector<ConceptCorrespondence>& table) {
  std::set<Concept> bases, targets;
  for (const auto& c : table)
    if (!bases.insert(c.base).second || !targets.insert(c.target).second) return false;
  return true;
}

/// Correspondences agree with every matched relation pair.
inline bool structurally_consistent(const MappingResult& m) {
  std::map<Concept, Concept> fwd;
  for (const auto& c : m.correspondence_table) fwd[c.base] = c.target;
  std::set<Concept> touched;
  for (const auto& h : m.best.hypotheses) {
    if (h.base.label != h.target.label) return false;
    if (fwd[h.base.head] != h.target.head || fwd[h.base.tail] != h.target.tail) return false;
    touched.insert(h.base.head);
    touched.insert(h.base.tail);
  }
  return touched.size() == fwd.size();
}

/// Small connected KB-backed network: grows from a random assertion by adding
/// random assertions that touch it, within the given bounds.
inline SemanticNetwork random_kb_network(const KnowledgeBase& kb, std::size_t max_relations,
                                         std::size_t max_concepts, Rng& rng) {
  auto all = kb.assertions();
  SemanticNetwork net;
  net.add_relation(all[rng.index(all.size())].relation);
  std::size_t target = 1 + rng.index(max_relations);
  for (int tries = 0; net.size() < target && tries < 50; ++tries) {
    std::vector<Concept> cs(net.concepts().begin(), net.concepts().end());
    auto around = kb.assertions_involving(cs[rng.index(cs.size())]);
    const auto& r = around[rng.index(around.size())].relation;
    if (net.has_relation(r)) continue;
    std::size_t fresh = !net.has_concept(r.head) + !net.has_concept(r.tail);
    if (net.concept_count() + fresh > max_concepts) continue;
    net.add_relation(r);
  }
  return net;
}

/// Mutation/crossover parent: one to three grown clusters, sometimes with an
/// isolated concept.
inline SemanticNetwork random_parent(const KnowledgeBase& kb, Rng& rng) {
  SemanticNetwork net;
  std::size_t clusters = 1 + rng.index(3);
  for (std::size_t i = 0; i < clusters; ++i)
    net = merge(net, grow_random(kb, {}, 2 + rng.index(7), 10, rng));
  if (rng.bernoulli(0.2)) net.add_concept(random_concept(kb, rng));
  return net;
}

inline std::set<Concept> minus(const std::set<Concept>& a, const std::set<Concept>& b) {
  std::set<Concept> out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::inserter(out, out.end()));
  return out;
}

inline std::set<Relation> minus(const std::set<Relation>& a, const std::set<Relation>& b) {
  std::set<Relation> out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::inserter(out, out.end()));
  return out;
}

/// Empty when `child` is a valid outcome of mutation `type` on `parent`,
/// otherwise a description of the first violated postcondition.
inline std::string mutation_violation(MutationType type, const SemanticNetwork& parent,
                                      const SemanticNetwork& child, const KnowledgeBase& kb) {
  if (!well_formed(child)) return "malformed offspring";
  if (!kb_valid(child, kb)) return "relation outside the knowledge base";
  auto added_c = minus(child.concepts(), parent.concepts());
  auto lost_c = minus(parent.concepts(), child.concepts());
  auto added_r = minus(child.relations(), parent.relations());
  auto lost_r = minus(parent.relations(), child.relations());
  auto comp_before = component_count(parent);
  auto comp_after = component_count(child);
  switch (type) {
    case MutationType::ConceptAttachment: {
      if (added_c.size() != 1 || !lost_c.empty()) return "I: expected exactly one new concept";
      if (added_r.size() != 1 || !lost_r.empty()) return "I: expected exactly one new relation";
      const auto& r = *added_r.begin();
      const auto& fresh = *added_c.begin();
      if (!r.involves(fresh) || !parent.has_concept(r.other(fresh))) return "I: relation does not attach";
      if (comp_after != comp_before) return "I: component count changed";
      return {};
    }
    case MutationType::RelationAddition: {
      if (!added_c.empty() || !lost_c.empty()) return "IIa: concept set changed";
      if (added_r.size() != 1 || !lost_r.empty()) return "IIa: expected exactly one new relation";
      if (comp_after != comp_before && comp_after + 1 != comp_before) return "IIa: component delta";
      return {};
    }
    case MutationType::RelationDeletion: {
      if (!added_c.empty() || !lost_c.empty()) return "IIb: concept set changed";
      if (!added_r.empty() || lost_r.size() != 1) return "IIb: expected exactly one lost relation";
      if (comp_after != comp_before && comp_after != comp_before + 1) return "IIb: component delta";
      return {};
    }
    case MutationType::ConceptAddition: {
      if (added_c.size() != 1 || !lost_c.empty()) return "IIIa: expected exactly one new concept";
      if (!added_r.empty() || !lost_r.empty()) return "IIIa: relation set changed";
      if (!kb.has_concept(*added_c.begin())) return "IIIa: concept not in knowledge base";
      if (comp_after != comp_before + 1) return "IIIa: expected one more component";
      return {};
    }
    case MutationType::ConceptDeletion: {
      if (!added_c.empty() || lost_c.size() != 1) return "IIIb: expected exactly one lost concept";
      if (!added_r.empty()) return "IIIb: relation added";
      const auto& gone = *lost_c.begin();
      std::set<Relation> incident;
      for (const auto& r : parent.relations())
        if (r.involves(gone)) incident.insert(r);
      if (lost_r != incident) return "IIIb: lost relations differ from the incident set";
      return {};
    }
    case MutationType::ConceptReplacement: {
      if (added_c.size() != 1 || lost_c.size() != 1) return "IV: expected one concept swapped";
      const auto& old_c = *lost_c.begin();
      const auto& new_c = *added_c.begin();
      std::set<Relation> expected;
      std::vector<Relation> old_rels, new_rels;
      for (const auto& r : parent.relations()) {
        if (!r.involves(old_c)) {
          expected.insert(r);
          continue;
        }
        old_rels.push_back(r);
        auto sub = r.substituted(old_c, new_c);
        if (kb.contains(sub)) expected.insert(sub);
      }
      if (child.relations() != expected) return "IV: relations differ from the rewrite";
      for (const auto& a : kb.assertions_involving(new_c)) new_rels.push_back(a.relation);
      if (!interchangeable(kb, new_c, new_rels, old_c, old_rels)) return "IV: replacement not interchangeable";
      return {};
    }
  }
  return "unknown mutation type";
}

/// Offspring relations a subgraph exchange must produce for the recipient
/// `p` (whose crossover concept `a` leaves with subgraph `out_sg`) given the
/// incoming subgraph `in_sg` rooted at `b`, with `common` the shared patterns.
inline std::set<Relation> expected_exchange(const SemanticNetwork& p, const Concept& a, const Subgraph& out_sg,
                                            const Subgraph& in_sg, const Concept& b,
                                            const std::set<std::tuple<RelationLabel, Concept, bool>>& common) {
  auto cut = [&](const Relation& r) {
    return p.has_relation(r) && out_sg.concepts.contains(r.head) != out_sg.concepts.contains(r.tail);
  };
  std::set<Relation> out;
  for (const auto& r : p.relations()) {
    bool touches = out_sg.concepts.contains(r.head) || out_sg.concepts.contains(r.tail);
    if (!touches) out.insert(r);
    if (r.involves(a)) {
      bool head = r.head == a;
      if (common.contains({r.label, head ? r.tail : r.head, head})) {
        Relation moved = head ? Relation{r.label, b, r.tail} : Relation{r.label, r.head, b};
        if (moved.head != moved.tail && !cut(moved)) out.insert(moved);
      }
    }
  }
  for (const auto& r : in_sg.relations)
    if (!cut(r)) out.insert(r);
  return out;
}

/// (label, other concept, crossover concept is head) shapes shared by a in p1
/// and b in p2.
inline std::set<std::tuple<RelationLabel, Concept, bool>> shared_shapes(const SemanticNetwork& p1, const Concept& a,
                                                                        const SemanticNetwork& p2, const Concept& b) {
  auto shapes = [](const SemanticNetwork& n, const Concept& c) {
    std::set<std::tuple<RelationLabel, Concept, bool>> s;
    for (const auto& r : n.relations()) {
      if (r.head == c) s.insert({r.label, r.tail, true});
      if (r.tail == c) s.insert({r.label, r.head, false});
    }
    return s;
  };
  auto sa = shapes(p1, a), sb = shapes(p2, b);
  std::set<std::tuple<RelationLabel, Concept, bool>> out;
  std::set_intersection(sa.begin(), sa.end(), sb.begin(), sb.end(), std::inserter(out, out.end()));
  return out;
}

/// Relations of `p` linking a non-root subgraph concept to a concept outside
/// the subgraph.
inline std::set<Relation> severed_relations(const SemanticNetwork& p, const Subgraph& sg) {
  std::set<Relation> out;
  for (const auto& r : p.relations()) {
    if (r.involves(sg.root)) continue;
    bool h = sg.concepts.contains(r.head), t = sg.concepts.contains(r.tail);
    if (h != t) out.insert(r);
  }
  return out;
}

/// Bridge candidates by brute force over every KB assertion.
inline std::set<Relation> brute_force_bridges(const SemanticNetwork& p1, const SemanticNetwork& p2,
                                              const KnowledgeBase& kb) {
  std::set<Relation> out;
  auto only = [](const SemanticNetwork& x, const SemanticNetwork& y, const Concept& c) {
    return x.has_concept(c) && !y.has_concept(c);
  };
  for (const auto& a : kb.assertions()) {
    const auto& r = a.relation;
    if (p1.has_relation(r) || p2.has_relation(r)) continue;
    bool links = (only(p1, p2, r.head) && p2.has_concept(r.tail)) || (only(p1, p2, r.tail) && p2.has_concept(r.head)) ||
                 (only(p2, p1, r.head) && p1.has_concept(r.tail)) || (only(p2, p1, r.tail) && p1.has_concept(r.head));
    if (links) out.insert(r);
  }
  return out;
}

}  // namespace analogen::testing
