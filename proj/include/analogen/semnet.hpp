#pragma once

#include <cstddef>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "analogen/relation.hpp"

namespace analogen {

class KnowledgeBase;
class Rng;

/// Directed labeled graph of concepts and binary relations.
///
/// Relations form a set: a (label, head, tail) triple appears at most once.
/// Every relation endpoint is a member of the concept set, and concepts of
/// degree zero are allowed.
class SemanticNetwork {
 public:
  SemanticNetwork() = default;

  /// Inserts a concept; returns false if it was already present.
  bool add_concept(const Concept& c);

  /// Inserts the relation and any missing endpoint. Returns false (and leaves
  /// the network unchanged) for a duplicate triple. Throws on a self-loop.
  bool add_relation(const Relation& r);

  /// Removes `c` and every relation it is involved in. Throws if absent.
  void remove_concept(const Concept& c);

  bool remove_relation(const Relation& r);

  bool has_concept(const Concept& c) const { return concepts_.contains(c); }
  bool has_relation(const Relation& r) const { return relations_.contains(r); }

  const std::set<Concept>& concepts() const { return concepts_; }
  const std::set<Relation>& relations() const { return relations_; }

  /// Relations with `c` as head or tail, in canonical order.
  std::vector<Relation> relations_of(const Concept& c) const;
  std::size_t degree(const Concept& c) const;

  std::size_t concept_count() const { return concepts_.size(); }
  /// Network size is the number of relations.
  std::size_t size() const { return relations_.size(); }
  bool empty() const { return concepts_.empty(); }

  bool operator==(const SemanticNetwork&) const = default;

 private:
  std::set<Concept> concepts_;
  std::set<Relation> relations_;
};

/// Weakly connected components, each sorted, ordered by smallest label.
std::vector<std::vector<Concept>> components(const SemanticNetwork& net);

/// Relation-set union of two networks (concepts included).
SemanticNetwork merge(const SemanticNetwork& a, const SemanticNetwork& b);

/// Crossover subgraph rooted at one concept.
struct Subgraph {
  Concept root;
  std::set<Concept> concepts;
  std::set<Relation> relations;
};

/// Patterns of `a`'s relations in `net_a` that also occur among `b`'s relations
/// in `net_b`, e.g. CapableOf(., fly) shared by bird and airplane.
std::set<RelationPattern> common_patterns(const SemanticNetwork& net_a, const Concept& a,
                                          const SemanticNetwork& net_b, const Concept& b);

/// Information in `net` specific to `root`: the root, its relations whose
/// pattern is not in `common` with their concepts, and everything one more
/// step out from those concepts. Concepts reached only through a common
/// relation stay out, and relations running from the subgraph into the rest
/// of the network without passing through the root are not included.
Subgraph extract_crossover_subgraph(const SemanticNetwork& net, const Concept& root,
                                    const std::set<RelationPattern>& common);

/// Random commonsense network growth.
///
/// Starts from `seeds` (or one random KB concept when empty), then repeatedly
/// picks a concept already in the network and appends one unused KB assertion
/// involving it together with its other concept. Stops once the network has
/// `c_max` concepts or after `timeout` consecutive picks with nothing to add.
SemanticNetwork grow_random(const KnowledgeBase& kb, std::span<const Concept> seeds,
                            std::size_t c_max, std::size_t timeout, Rng& rng);

}  // namespace analogen
