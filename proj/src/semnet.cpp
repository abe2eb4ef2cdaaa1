#include "analogen/semnet.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "analogen/error.hpp"
#include "analogen/kb.hpp"
#include "analogen/rng.hpp"

namespace analogen {

bool SemanticNetwork::add_concept(const Concept& c) {
  if (c.empty()) throw Error(ErrorCode::InvalidArgument, "empty concept label");
  return concepts_.insert(c).second;
}

bool SemanticNetwork::add_relation(const Relation& r) {
  if (r.head == r.tail) throw Error(ErrorCode::InvalidArgument, "self-loop rejected: " + to_string(r));
  if (r.label.empty()) throw Error(ErrorCode::InvalidArgument, "empty relation label");
  if (relations_.contains(r)) return false;
  add_concept(r.head);
  add_concept(r.tail);
  relations_.insert(r);
  return true;
}

void SemanticNetwork::remove_concept(const Concept& c) {
  if (concepts_.erase(c) == 0) throw Error(ErrorCode::NotFound, "concept not in network: " + c);
  std::erase_if(relations_, [&](const Relation& r) { return r.involves(c); });
}

bool SemanticNetwork::remove_relation(const Relation& r) { return relations_.erase(r) > 0; }

std::vector<Relation> SemanticNetwork::relations_of(const Concept& c) const {
  std::vector<Relation> out;
  for (const auto& r : relations_)
    if (r.involves(c)) out.push_back(r);
  return out;
}

std::size_t SemanticNetwork::degree(const Concept& c) const {
  return static_cast<std::size_t>(
      std::count_if(relations_.begin(), relations_.end(), [&](const Relation& r) { return r.involves(c); }));
}

std::vector<std::vector<Concept>> components(const SemanticNetwork& net) {
  std::vector<Concept> names(net.concepts().begin(), net.concepts().end());
  std::map<Concept, std::size_t> id;
  for (std::size_t i = 0; i < names.size(); ++i) id[names[i]] = i;

  std::vector<std::size_t> parent(names.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& r : net.relations()) {
    auto a = find(id.at(r.head));
    auto b = find(id.at(r.tail));
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }

  // Names are sorted, so the first member seen per root is the smallest and
  // groups come out ordered by their smallest label.
  std::vector<std::vector<Concept>> out;
  std::map<std::size_t, std::size_t> slot;
  for (std::size_t i = 0; i < names.size(); ++i) {
    auto root = find(i);
    auto [it, inserted] = slot.try_emplace(root, out.size());
    if (inserted) out.emplace_back();
    out[it->second].push_back(names[i]);
  }
  return out;
}

SemanticNetwork merge(const SemanticNetwork& a, const SemanticNetwork& b) {
  SemanticNetwork out = a;
  for (const auto& c : b.concepts()) out.add_concept(c);
  for (const auto& r : b.relations()) out.add_relation(r);
  return out;
}

std::set<RelationPattern> common_patterns(const SemanticNetwork& net_a, const Concept& a,
                                          const SemanticNetwork& net_b, const Concept& b) {
  std::set<RelationPattern> pa, pb, out;
  for (const auto& r : net_a.relations_of(a)) pa.insert(RelationPattern::of(r, a));
  for (const auto& r : net_b.relations_of(b)) pb.insert(RelationPattern::of(r, b));
  std::set_intersection(pa.begin(), pa.end(), pb.begin(), pb.end(), std::inserter(out, out.end()));
  return out;
}

Subgraph extract_crossover_subgraph(const SemanticNetwork& net, const Concept& root,
                                    const std::set<RelationPattern>& common) {
  Subgraph sg;
  sg.root = root;
  sg.concepts.insert(root);

  std::set<Concept> first_ring;
  std::set<Concept> common_only;
  for (const auto& r : net.relations_of(root)) {
    const auto& other = r.other(root);
    if (common.contains(RelationPattern::of(r, root)))
      common_only.insert(other);
    else
      first_ring.insert(other);
  }
  for (const auto& c : first_ring) common_only.erase(c);

  sg.concepts.insert(first_ring.begin(), first_ring.end());
  for (const auto& c : first_ring) {
    for (const auto& r : net.relations_of(c)) {
      const auto& other = r.other(c);
      if (other == root || common_only.contains(other)) continue;
      sg.concepts.insert(other);
    }
  }

  for (const auto& r : net.relations()) {
    if (!sg.concepts.contains(r.head) || !sg.concepts.contains(r.tail)) continue;
    if (r.involves(root) && common.contains(RelationPattern::of(r, root))) continue;
    sg.relations.insert(r);
  }
  return sg;
}

SemanticNetwork grow_random(const KnowledgeBase& kb, std::span<const Concept> seeds, std::size_t c_max,
                            std::size_t timeout, Rng& rng) {
  if (kb.empty()) throw Error(ErrorCode::InvalidArgument, "knowledge base has no concepts");
  if (c_max == 0) throw Error(ErrorCode::InvalidArgument, "c_max must be at least 1");
  if (timeout == 0) throw Error(ErrorCode::InvalidArgument, "timeout must be at least 1");

  SemanticNetwork net;
  if (seeds.empty()) {
    net.add_concept(random_concept(kb, rng));
  } else {
    for (const auto& s : seeds) {
      auto c = normalize_concept(s);
      if (!kb.has_concept(c)) throw Error(ErrorCode::NotFound, "seed concept not in knowledge base: " + s);
      net.add_concept(c);
    }
  }

  std::size_t failures = 0;
  while (net.concept_count() < c_max && failures < timeout) {
    std::vector<Concept> present(net.concepts().begin(), net.concepts().end());
    const auto& picked = present[rng.index(present.size())];
    std::vector<Relation> unused;
    for (const auto& a : kb.assertions_involving(picked))
      if (!net.has_relation(a.relation)) unused.push_back(a.relation);
    if (unused.empty()) {
      ++failures;
      continue;
    }
    failures = 0;
    net.add_relation(unused[rng.index(unused.size())]);
  }
  return net;
}

}  // namespace analogen
