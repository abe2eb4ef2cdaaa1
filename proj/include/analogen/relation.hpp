#pragma once

#include <compare>
#include <string>
#include <string_view>

namespace analogen {

/// Normalized concept label (lowercase, single-space separated words).
using Concept = std::string;
/// Relation name from an open set (IsA, PartOf, ...). Case-sensitive.
using RelationLabel = std::string;

enum class Position { Head, Tail };

/// Directed binary relation label(head, tail).
struct Relation {
  RelationLabel label;
  Concept head;
  Concept tail;

  bool involves(std::string_view c) const { return head == c || tail == c; }

  /// The endpoint that is not `c`. `c` must be an endpoint.
  const Concept& other(std::string_view c) const { return head == c ? tail : head; }

  /// Copy with every occurrence of `from` replaced by `to`.
  Relation substituted(std::string_view from, const Concept& to) const {
    Relation r = *this;
    if (r.head == from) r.head = to;
    if (r.tail == from) r.tail = to;
    return r;
  }

  auto operator<=>(const Relation&) const = default;
  bool operator==(const Relation&) const = default;
};

/// Relation shape as seen from one endpoint: label(., other) or label(other, .).
struct RelationPattern {
  RelationLabel label;
  Concept other;
  Position anchor = Position::Head;

  static RelationPattern of(const Relation& r, std::string_view anchor_concept) {
    if (r.head == anchor_concept) return {r.label, r.tail, Position::Head};
    return {r.label, r.head, Position::Tail};
  }

  Relation bind(const Concept& anchor_concept) const {
    if (anchor == Position::Head) return {label, anchor_concept, other};
    return {label, other, anchor_concept};
  }

  auto operator<=>(const RelationPattern&) const = default;
  bool operator==(const RelationPattern&) const = default;
};

/// Lowercases, collapses internal whitespace, and strips punctuation at token
/// edges. Idempotent. Returns an empty string when nothing survives.
std::string normalize_concept(std::string_view raw);

std::string to_string(const Relation& r);

}  // namespace analogen
