#include "analogen/operators.hpp"

#include <algorithm>
#include <set>

#include "analogen/rng.hpp"

namespace analogen {

std::string_view to_string(MutationType t) {
  switch (t) {
    case MutationType::ConceptAttachment: return "concept_attachment";
    case MutationType::RelationAddition: return "relation_addition";
    case MutationType::RelationDeletion: return "relation_deletion";
    case MutationType::ConceptAddition: return "concept_addition";
    case MutationType::ConceptDeletion: return "concept_deletion";
    case MutationType::ConceptReplacement: return "concept_replacement";
  }
  return "unknown";
}

namespace {

template <typename T>
const T& pick(const std::vector<T>& items, Rng& rng) {
  return items[rng.index(items.size())];
}

Position opposite(Position p) { return p == Position::Head ? Position::Tail : Position::Head; }

// Concepts that could stand where `c` stands in at least one of `rels`,
// according to the KB.
std::set<Concept> substitutes_in(const KnowledgeBase& kb, const Concept& c, std::span<const Relation> rels) {
  std::set<Concept> out;
  for (const auto& r : rels) {
    auto pat = RelationPattern::of(r, c);
    for (const auto& a : kb.assertions_with(pat.other, pat.label, opposite(pat.anchor))) {
      const auto& cand = pat.anchor == Position::Head ? a.relation.head : a.relation.tail;
      if (cand != c) out.insert(cand);
    }
  }
  return out;
}

}  // namespace

std::optional<SemanticNetwork> attach_concept(const SemanticNetwork& net, const KnowledgeBase& kb, Rng& rng) {
  auto attachments = attachable_concepts(kb, net);
  if (attachments.empty()) return std::nullopt;
  std::vector<Concept> concepts;
  for (const auto& a : attachments)
    if (concepts.empty() || concepts.back() != a.new_concept) concepts.push_back(a.new_concept);
  const auto& chosen = pick(concepts, rng);
  std::vector<Relation> links;
  for (const auto& a : attachments)
    if (a.new_concept == chosen) links.push_back(a.assertion.relation);
  SemanticNetwork out = net;
  out.add_relation(pick(links, rng));
  return out;
}

std::optional<SemanticNetwork> add_relation_between_existing(const SemanticNetwork& net,
                                                             const KnowledgeBase& kb, Rng& rng) {
  std::vector<Relation> candidates;
  for (const auto& c : net.concepts()) {
    for (const auto& a : kb.assertions_involving(c)) {
      const auto& r = a.relation;
      if (r.head == c && net.has_concept(r.tail) && !net.has_relation(r)) candidates.push_back(r);
    }
  }
  if (candidates.empty()) return std::nullopt;
  std::sort(candidates.begin(), candidates.end());
  SemanticNetwork out = net;
  out.add_relation(pick(candidates, rng));
  return out;
}

std::optional<SemanticNetwork> delete_relation(const SemanticNetwork& net, Rng& rng) {
  if (net.relations().empty()) return std::nullopt;
  std::vector<Relation> rels(net.relations().begin(), net.relations().end());
  SemanticNetwork out = net;
  out.remove_relation(pick(rels, rng));
  return out;
}

std::optional<SemanticNetwork> add_isolated_concept(const SemanticNetwork& net, const KnowledgeBase& kb,
                                                    Rng& rng) {
  auto all = kb.concepts();
  if (all.empty()) return std::nullopt;
  // Rejection sampling keeps the draw uniform over the concepts not yet in
  // the network; the explicit list covers nearly-saturated networks.
  for (int attempt = 0; attempt < 32; ++attempt) {
    const auto& c = all[rng.index(all.size())];
    if (!net.has_concept(c)) {
      SemanticNetwork out = net;
      out.add_concept(c);
      return out;
    }
  }
  std::vector<Concept> fresh;
  for (const auto& c : all)
    if (!net.has_concept(c)) fresh.push_back(c);
  if (fresh.empty()) return std::nullopt;
  SemanticNetwork out = net;
  out.add_concept(pick(fresh, rng));
  return out;
}

std::optional<SemanticNetwork> delete_concept(const SemanticNetwork& net, Rng& rng) {
  if (net.empty()) return std::nullopt;
  std::vector<Concept> concepts(net.concepts().begin(), net.concepts().end());
  SemanticNetwork out = net;
  out.remove_concept(pick(concepts, rng));
  return out;
}

std::vector<Concept> replacement_candidates(const SemanticNetwork& net, const Concept& c,
                                            const KnowledgeBase& kb, std::size_t min_shared) {
  auto rels = net.relations_of(c);
  std::vector<Concept> out;
  for (const auto& cand : substitutes_in(kb, c, rels)) {
    if (net.has_concept(cand)) continue;
    std::vector<Relation> cand_rels;
    for (const auto& a : kb.assertions_involving(cand)) cand_rels.push_back(a.relation);
    if (interchangeable(kb, cand, cand_rels, c, rels, min_shared)) out.push_back(cand);
  }
  return out;
}

SemanticNetwork replace_in_network(const SemanticNetwork& net, const Concept& c, const Concept& replacement,
                                   const KnowledgeBase& kb) {
  auto rels = net.relations_of(c);
  SemanticNetwork out = net;
  out.remove_concept(c);
  out.add_concept(replacement);
  for (const auto& r : rels) {
    auto sub = r.substituted(c, replacement);
    if (sub.head != sub.tail && kb.contains(sub)) out.add_relation(sub);
  }
  return out;
}

std::optional<SemanticNetwork> replace_concept(const SemanticNetwork& net, const KnowledgeBase& kb, Rng& rng,
                                               std::size_t min_shared) {
  std::vector<std::pair<Concept, std::vector<Concept>>> options;
  for (const auto& c : net.concepts()) {
    auto cands = replacement_candidates(net, c, kb, min_shared);
    if (!cands.empty()) options.emplace_back(c, std::move(cands));
  }
  if (options.empty()) return std::nullopt;
  const auto& [c, cands] = pick(options, rng);
  return replace_in_network(net, c, pick(cands, rng), kb);
}

std::optional<SemanticNetwork> apply_mutation(MutationType type, const SemanticNetwork& net,
                                              const KnowledgeBase& kb, Rng& rng, std::size_t min_shared) {
  switch (type) {
    case MutationType::ConceptAttachment: return attach_concept(net, kb, rng);
    case MutationType::RelationAddition: return add_relation_between_existing(net, kb, rng);
    case MutationType::RelationDeletion: return delete_relation(net, rng);
    case MutationType::ConceptAddition: return add_isolated_concept(net, kb, rng);
    case MutationType::ConceptDeletion: return delete_concept(net, rng);
    case MutationType::ConceptReplacement: return replace_concept(net, kb, rng, min_shared);
  }
  return std::nullopt;
}

MutationResult mutate(const SemanticNetwork& parent, const KnowledgeBase& kb, std::size_t timeout, Rng& rng,
                      std::size_t min_shared) {
  for (std::size_t trial = 0; trial < timeout; ++trial) {
    auto type = kMutationTypes[rng.index(kMutationTypes.size())];
    if (auto child = apply_mutation(type, parent, kb, rng, min_shared)) return {std::move(*child), type};
  }
  return {parent, std::nullopt};
}

std::vector<std::pair<Concept, Concept>> interchangeable_pairs(const SemanticNetwork& p1,
                                                               const SemanticNetwork& p2,
                                                               const KnowledgeBase& kb,
                                                               std::size_t min_shared) {
  std::vector<std::pair<Concept, Concept>> out;
  for (const auto& a : p1.concepts()) {
    auto rels_a = p1.relations_of(a);
    // b must fit into at least one of a's relations, so candidates come from
    // KB lookups on a's relation patterns.
    for (const auto& b : substitutes_in(kb, a, rels_a)) {
      if (!p2.has_concept(b)) continue;
      auto rels_b = p2.relations_of(b);
      if (interchangeable(kb, a, rels_a, b, rels_b, min_shared)) out.emplace_back(a, b);
    }
  }
  return out;  // a ascending, b ascending within a
}

namespace {

SemanticNetwork transplant(const SemanticNetwork& recipient, const Subgraph& outgoing, const Subgraph& incoming,
                           const std::set<RelationPattern>& common) {
  SemanticNetwork out = recipient;
  std::vector<Relation> shared;
  for (const auto& r : recipient.relations_of(outgoing.root))
    if (common.contains(RelationPattern::of(r, outgoing.root))) shared.push_back(r);
  for (const auto& c : outgoing.concepts) out.remove_concept(c);
  out.add_concept(incoming.root);
  // Severing is final: neither a rebind nor the incoming subgraph brings
  // back a relation cut from the recipient.
  auto severed = [&](const Relation& r) {
    return recipient.has_relation(r) && outgoing.concepts.contains(r.head) != outgoing.concepts.contains(r.tail);
  };
  for (const auto& r : shared) {
    auto moved = RelationPattern::of(r, outgoing.root).bind(incoming.root);
    if (moved.head != moved.tail && !severed(moved)) out.add_relation(moved);
  }
  for (const auto& c : incoming.concepts) out.add_concept(c);
  for (const auto& r : incoming.relations)
    if (!severed(r)) out.add_relation(r);
  return out;
}

}  // namespace

SubgraphExchange exchange_subgraphs(const SemanticNetwork& p1, const Concept& a, const SemanticNetwork& p2,
                                    const Concept& b) {
  auto common = common_patterns(p1, a, p2, b);
  SubgraphExchange x;
  x.first_root = a;
  x.second_root = b;
  x.first_subgraph = extract_crossover_subgraph(p1, a, common);
  x.second_subgraph = extract_crossover_subgraph(p2, b, common);
  x.first_offspring = transplant(p1, x.first_subgraph, x.second_subgraph, common);
  x.second_offspring = transplant(p2, x.second_subgraph, x.first_subgraph, common);
  return x;
}

std::optional<SubgraphExchange> crossover_type1(const SemanticNetwork& p1, const SemanticNetwork& p2,
                                                const KnowledgeBase& kb, Rng& rng, std::size_t min_shared) {
  auto pairs = interchangeable_pairs(p1, p2, kb, min_shared);
  if (pairs.empty()) return std::nullopt;
  const auto& [a, b] = pick(pairs, rng);
  return exchange_subgraphs(p1, a, p2, b);
}

std::vector<Relation> bridge_relations(const SemanticNetwork& p1, const SemanticNetwork& p2,
                                       const KnowledgeBase& kb) {
  std::set<Relation> out;
  auto collect = [&](const SemanticNetwork& from, const SemanticNetwork& to, const SemanticNetwork& other) {
    for (const auto& x : from.concepts()) {
      if (to.has_concept(x)) continue;
      for (const auto& a : kb.assertions_involving(x)) {
        const auto& r = a.relation;
        if (!to.has_concept(r.other(x))) continue;
        if (from.has_relation(r) || other.has_relation(r)) continue;
        out.insert(r);
      }
    }
  };
  collect(p1, p2, p2);
  collect(p2, p1, p1);
  return {out.begin(), out.end()};
}

std::pair<SemanticNetwork, SemanticNetwork> crossover_type2(const SemanticNetwork& p1, const SemanticNetwork& p2,
                                                            const KnowledgeBase& kb, Rng& rng) {
  auto joined = merge(p1, p2);
  auto bridges = bridge_relations(p1, p2, kb);
  auto first = joined;
  auto second = joined;
  if (!bridges.empty()) {
    first.add_relation(pick(bridges, rng));
    second.add_relation(pick(bridges, rng));
  }
  return {std::move(first), std::move(second)};
}

CrossoverResult crossover(const SemanticNetwork& p1, const SemanticNetwork& p2, const KnowledgeBase& kb, Rng& rng,
                          std::size_t min_shared) {
  if (auto x = crossover_type1(p1, p2, kb, rng, min_shared))
    return {std::move(x->first_offspring), std::move(x->second_offspring), CrossoverType::Subgraph};
  auto [first, second] = crossover_type2(p1, p2, kb, rng);
  return {std::move(first), std::move(second), CrossoverType::Merge};
}

}  // namespace analogen
