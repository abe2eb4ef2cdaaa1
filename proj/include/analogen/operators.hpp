#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "analogen/kb.hpp"
#include "analogen/semnet.hpp"

namespace analogen {

class Rng;

// Commonsense variation operators. Every relation an operator adds comes from
// the knowledge base, so KB-valid parents always yield KB-valid offspring.

enum class MutationType {
  ConceptAttachment,   // I
  RelationAddition,    // IIa
  RelationDeletion,    // IIb
  ConceptAddition,     // IIIa
  ConceptDeletion,     // IIIb
  ConceptReplacement,  // IV
};

inline constexpr std::array<MutationType, 6> kMutationTypes = {
    MutationType::ConceptAttachment, MutationType::RelationAddition,
    MutationType::RelationDeletion,  MutationType::ConceptAddition,
    MutationType::ConceptDeletion,   MutationType::ConceptReplacement,
};

std::string_view to_string(MutationType t);

// Mutation primitives. Each returns std::nullopt when infeasible for `net`.

std::optional<SemanticNetwork> attach_concept(const SemanticNetwork& net, const KnowledgeBase& kb,
                                              Rng& rng);
std::optional<SemanticNetwork> add_relation_between_existing(const SemanticNetwork& net,
                                                             const KnowledgeBase& kb, Rng& rng);
std::optional<SemanticNetwork> delete_relation(const SemanticNetwork& net, Rng& rng);
std::optional<SemanticNetwork> add_isolated_concept(const SemanticNetwork& net,
                                                    const KnowledgeBase& kb, Rng& rng);
std::optional<SemanticNetwork> delete_concept(const SemanticNetwork& net, Rng& rng);
std::optional<SemanticNetwork> replace_concept(const SemanticNetwork& net, const KnowledgeBase& kb,
                                               Rng& rng, std::size_t min_shared = 1);

/// KB concepts outside `net` interchangeable with `c`, sorted.
std::vector<Concept> replacement_candidates(const SemanticNetwork& net, const Concept& c,
                                            const KnowledgeBase& kb, std::size_t min_shared = 1);

/// Substitutes `replacement` for `c`, keeping only rewritten relations that
/// exist in the KB.
SemanticNetwork replace_in_network(const SemanticNetwork& net, const Concept& c,
                                   const Concept& replacement, const KnowledgeBase& kb);

std::optional<SemanticNetwork> apply_mutation(MutationType type, const SemanticNetwork& net,
                                              const KnowledgeBase& kb, Rng& rng,
                                              std::size_t min_shared = 1);

struct MutationResult {
  SemanticNetwork network;
  std::optional<MutationType> applied;  // empty when the parent came back unchanged
};

/// Picks a mutation type uniformly, re-picking on infeasibility; after
/// `timeout` fruitless trials the parent is returned as is.
MutationResult mutate(const SemanticNetwork& parent, const KnowledgeBase& kb, std::size_t timeout,
                      Rng& rng, std::size_t min_shared = 1);

/// Outcome of a subgraph crossover at one crossover-concept pair.
struct SubgraphExchange {
  Concept first_root;   // crossover concept in the first parent
  Concept second_root;  // crossover concept in the second parent
  Subgraph first_subgraph;
  Subgraph second_subgraph;
  SemanticNetwork first_offspring;   // first parent carrying second_subgraph
  SemanticNetwork second_offspring;  // second parent carrying first_subgraph
};

/// Interchangeable (concept of p1, concept of p2) pairs with distinct labels,
/// sorted.
std::vector<std::pair<Concept, Concept>> interchangeable_pairs(const SemanticNetwork& p1,
                                                               const SemanticNetwork& p2,
                                                               const KnowledgeBase& kb,
                                                               std::size_t min_shared = 1);

/// Exchanges the crossover subgraphs of `a` (in p1) and `b` (in p2). In each
/// offspring the incoming root takes the outgoing root's place in the
/// relations the two roots have in common.
SubgraphExchange exchange_subgraphs(const SemanticNetwork& p1, const Concept& a,
                                    const SemanticNetwork& p2, const Concept& b);

/// Subgraph crossover at a uniformly picked interchangeable pair; nullopt when
/// no pair exists.
std::optional<SubgraphExchange> crossover_type1(const SemanticNetwork& p1, const SemanticNetwork& p2,
                                                const KnowledgeBase& kb, Rng& rng,
                                                std::size_t min_shared = 1);

/// KB assertions that could join the two parents: one endpoint belongs only to
/// one parent and the other endpoint to the other parent. Sorted, unique.
std::vector<Relation> bridge_relations(const SemanticNetwork& p1, const SemanticNetwork& p2,
                                       const KnowledgeBase& kb);

/// Graph-merging crossover: each offspring is the union of both parents plus
/// one independently drawn bridge relation (none when no bridge exists).
std::pair<SemanticNetwork, SemanticNetwork> crossover_type2(const SemanticNetwork& p1,
                                                            const SemanticNetwork& p2,
                                                            const KnowledgeBase& kb, Rng& rng);

enum class CrossoverType { Subgraph, Merge };

struct CrossoverResult {
  SemanticNetwork first;
  SemanticNetwork second;
  CrossoverType type = CrossoverType::Subgraph;
};

/// Subgraph crossover when possible, graph merging otherwise.
CrossoverResult crossover(const SemanticNetwork& p1, const SemanticNetwork& p2,
                          const KnowledgeBase& kb, Rng& rng, std::size_t min_shared = 1);

}  // namespace analogen
