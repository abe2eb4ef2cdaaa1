#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include <nlohmann/json.hpp>

#include "analogen/relation.hpp"
#include "analogen/semnet.hpp"

namespace analogen {

/// Pairing of a base relation with an identically labeled target relation.
struct MatchHypothesis {
  Relation base;
  Relation target;

  auto operator<=>(const MatchHypothesis&) const = default;
  bool operator==(const MatchHypothesis&) const = default;
};

struct ConceptCorrespondence {
  Concept base;
  Concept target;

  auto operator<=>(const ConceptCorrespondence&) const = default;
  bool operator==(const ConceptCorrespondence&) const = default;
};

/// Systematicity weights: every matched relation earns `w_base`, and every
/// pair of matched relations that are adjacent in both networks earns
/// `w_conn` on top.
struct ScoreWeights {
  double w_base = 0.2;
  double w_conn = 0.05;
};

struct SearchLimits {
  /// Exhaustive search up to this many hypotheses; beam search above.
  std::size_t exact_limit = 24;
  std::size_t beam_width = 32;
};

/// Consistent set of match hypotheses with its induced concept mapping.
struct GMap {
  std::vector<MatchHypothesis> hypotheses;  // sorted
  std::vector<ConceptCorrespondence> correspondences;  // sorted by base concept
  std::size_t adjacent_pairs = 0;
  double score = 0.0;
};

struct MappingResult {
  GMap best;
  double fitness = 0.0;
  std::vector<ConceptCorrespondence> correspondence_table;
  bool exact = true;
  std::size_t hypothesis_count = 0;

  std::size_t mapped_relations() const { return best.hypotheses.size(); }
};

/// Every (base, target) relation pair sharing a label, sorted.
std::vector<MatchHypothesis> enumerate_hypotheses(const SemanticNetwork& base,
                                                  const SemanticNetwork& target);

/// One-to-one check: the induced concept mapping is functional and injective
/// and no relation on either side is used twice.
bool consistent(std::span<const MatchHypothesis> hyps);

/// Concept mapping implied by `hyps`. Throws Error(InvalidArgument) when
/// the set is inconsistent.
std::vector<ConceptCorrespondence> induced_correspondences(std::span<const MatchHypothesis> hyps);

/// Unordered hypothesis pairs whose base relations share a concept that maps
/// onto a concept shared by their target relations.
std::size_t adjacent_pairs(std::span<const MatchHypothesis> hyps);

/// Builds a scored GMap from a consistent hypothesis set (throws otherwise).
GMap make_gmap(std::vector<MatchHypothesis> hyps, const ScoreWeights& w);

/// Recomputes the systematicity score. Throws on an inconsistent gmap.
double score(const GMap& gmap, const ScoreWeights& w);

/// Highest-scoring consistent gmap. Ties prefer more hypotheses, then the
/// lexicographically smallest correspondence table. Exhaustive with
/// branch-and-bound when the hypothesis count is within `limits.exact_limit`,
/// beam search otherwise (`exact` is then false and the score a lower bound).
MappingResult best_gmap(const SemanticNetwork& base, const SemanticNetwork& target,
                        const ScoreWeights& w = {}, const SearchLimits& limits = {});

/// Analogy fitness of `individual` against `base`.
double fitness(const SemanticNetwork& base, const SemanticNetwork& individual,
               const ScoreWeights& w = {}, const SearchLimits& limits = {});

/// Mapping report: correspondences, matched relation pairs, score terms and
/// the exact/approximate flag.
nlohmann::json mapping_report(const MappingResult& result, const ScoreWeights& w);

}  // namespace analogen
