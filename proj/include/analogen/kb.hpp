#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <tuple>
#include <unordered_map>
#include <utility>
#include <vector>

#include "analogen/relation.hpp"

namespace analogen {

class Rng;
class SemanticNetwork;

/// One commonsense fact with its reliability score.
struct ScoredAssertion {
  Relation relation;
  double score = 0.0;

  bool operator==(const ScoredAssertion&) const = default;
};

struct LoadReport {
  std::size_t lines = 0;
  std::size_t kept = 0;
  std::size_t below_threshold = 0;
  std::size_t duplicates = 0;
  std::size_t self_loops = 0;
  std::size_t warnings = 0;
};

/// Immutable, indexed store of score-filtered assertions.
///
/// All query results come back in a canonical order so a fixed random seed
/// reproduces the same run everywhere.
class KnowledgeBase {
 public:
  KnowledgeBase() = default;

  /// Builds a KB from in-memory assertions. Labels of concepts are normalized,
  /// assertions scoring below `r_min` are dropped, and duplicates keep the max
  /// score.
  static KnowledgeBase from_assertions(std::span<const ScoredAssertion> assertions, double r_min,
                                       LoadReport* report = nullptr);

  /// Parses the `label<TAB>head<TAB>tail<TAB>score` format. Throws
  /// Error(Parse) naming the offending line.
  static KnowledgeBase parse(std::istream& in, double r_min, LoadReport* report = nullptr);

  static KnowledgeBase load(const std::filesystem::path& path, double r_min,
                            LoadReport* report = nullptr);

  std::size_t size() const { return assertions_.size(); }
  bool empty() const { return assertions_.empty(); }
  double r_min() const { return r_min_; }
  /// SHA-256 of the source bytes (empty for in-memory KBs).
  const std::string& digest() const { return digest_; }

  /// Assertions sorted by (label, head, tail).
  std::span<const ScoredAssertion> assertions() const { return assertions_; }
  /// Distinct concepts, sorted.
  std::span<const Concept> concepts() const { return concepts_; }

  bool contains(const Relation& r) const;
  std::optional<double> score(const Relation& r) const;
  bool has_concept(const Concept& c) const;

  /// Assertions with `c` as head or tail, sorted by label, then the other
  /// concept, then head.
  std::vector<ScoredAssertion> assertions_involving(const Concept& c) const;

  /// Assertions labeled `label` that have `c` at position `pos`.
  std::vector<ScoredAssertion> assertions_with(const Concept& c, const RelationLabel& label,
                                               Position pos) const;

 private:
  void build_indices();

  std::vector<ScoredAssertion> assertions_;
  std::vector<Concept> concepts_;
  std::unordered_map<Concept, std::vector<std::size_t>> by_concept_;
  std::map<std::tuple<Concept, RelationLabel, Position>, std::vector<std::size_t>> by_concept_label_;
  double r_min_ = 0.0;
  std::string digest_;
};

inline std::vector<ScoredAssertion> assertions_involving(const KnowledgeBase& kb, const Concept& c) {
  return kb.assertions_involving(c);
}

/// A KB assertion linking a concept outside a network to one inside it.
struct Attachment {
  ScoredAssertion assertion;
  Concept new_concept;

  bool operator==(const Attachment&) const = default;
};

/// Every (assertion, new concept) pair where the assertion connects a concept
/// not in `net` to one in `net`. Sorted by new concept, then relation.
std::vector<Attachment> attachable_concepts(const KnowledgeBase& kb, const SemanticNetwork& net);

/// How many of `rels` (relations involving `from`) stay KB assertions when
/// `from` is replaced by `to`.
std::size_t substitutable_count(const KnowledgeBase& kb, const Concept& from, const Concept& to,
                                std::span<const Relation> rels);

/// True when `a` can take `b`'s place in at least `min_shared` of `rels_b`,
/// and `b` can take `a`'s place in at least `min_shared` of `rels_a`.
bool interchangeable(const KnowledgeBase& kb, const Concept& a, std::span<const Relation> rels_a,
                     const Concept& b, std::span<const Relation> rels_b,
                     std::size_t min_shared = 1);

/// Uniform draw over the KB's distinct concepts.
const Concept& random_concept(const KnowledgeBase& kb, Rng& rng);

}  // namespace analogen
