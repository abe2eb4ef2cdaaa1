#include "analogen/kb.hpp"

#include <algorithm>
#include <charconv>
#include <cctype>
#include <cmath>
#include <istream>
#include <sstream>

#include "analogen/error.hpp"
#include "analogen/io.hpp"
#include "analogen/rng.hpp"
#include "analogen/semnet.hpp"

namespace analogen {

namespace {

bool is_edge_punct(unsigned char ch) { return std::ispunct(ch) != 0; }

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::optional<double> parse_score(std::string_view s) {
  s = trim(s);
  if (s.empty()) return std::nullopt;
  if (s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(v)) return std::nullopt;
  return v;
}

}  // namespace

std::string normalize_concept(std::string_view raw) {
  std::string out;
  std::size_t i = 0;
  while (i < raw.size()) {
    while (i < raw.size() && std::isspace(static_cast<unsigned char>(raw[i]))) ++i;
    std::size_t j = i;
    while (j < raw.size() && !std::isspace(static_cast<unsigned char>(raw[j]))) ++j;
    std::string_view token = raw.substr(i, j - i);
    while (!token.empty() && is_edge_punct(token.front())) token.remove_prefix(1);
    while (!token.empty() && is_edge_punct(token.back())) token.remove_suffix(1);
    if (!token.empty()) {
      if (!out.empty()) out.push_back(' ');
      for (char ch : token) out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(ch))));
    }
    i = j;
  }
  return out;
}

std::string to_string(const Relation& r) { return r.label + "(" + r.head + ", " + r.tail + ")"; }

KnowledgeBase KnowledgeBase::from_assertions(std::span<const ScoredAssertion> assertions,
                                             double r_min, LoadReport* report) {
  LoadReport local;
  LoadReport& rep = report ? *report : local;
  std::map<Relation, double> best;
  for (const auto& a : assertions) {
    Relation r{std::string(trim(a.relation.label)), normalize_concept(a.relation.head),
               normalize_concept(a.relation.tail)};
    if (r.label.empty() || r.head.empty() || r.tail.empty())
      throw Error(ErrorCode::InvalidArgument, "assertion with empty field: " + to_string(a.relation));
    if (r.head == r.tail) {
      ++rep.self_loops;
      continue;
    }
    if (a.score < r_min) {
      ++rep.below_threshold;
      continue;
    }
    auto [it, inserted] = best.try_emplace(r, a.score);
    if (!inserted) {
      ++rep.duplicates;
      it->second = std::max(it->second, a.score);
    }
  }

  KnowledgeBase kb;
  kb.r_min_ = r_min;
  kb.assertions_.reserve(best.size());
  for (auto& [rel, s] : best) kb.assertions_.push_back({rel, s});
  kb.build_indices();
  rep.kept = kb.assertions_.size();
  if (kb.empty()) ++rep.warnings;
  return kb;
}

KnowledgeBase KnowledgeBase::parse(std::istream& in, double r_min, LoadReport* report) {
  LoadReport local;
  LoadReport& rep = report ? *report : local;
  std::vector<ScoredAssertion> raw;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    ++rep.lines;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    // UTF-8 byte order mark on the first line
    if (lineno == 1 && line.starts_with("\xEF\xBB\xBF")) line.erase(0, 3);
    std::string_view view = line;
    if (trim(view).empty() || trim(view).front() == '#') continue;

    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
      auto tab = view.find('\t', start);
      fields.push_back(view.substr(start, tab == std::string_view::npos ? tab : tab - start));
      if (tab == std::string_view::npos) break;
      start = tab + 1;
    }
    auto malformed = [&](const std::string& why) {
      return Error(ErrorCode::Parse, "line " + std::to_string(lineno) + ": " + why);
    };
    if (fields.size() != 4) throw malformed("expected 4 tab-separated fields, got " + std::to_string(fields.size()));
    auto label = trim(fields[0]);
    if (label.empty()) throw malformed("empty relation label");
    auto head = normalize_concept(fields[1]);
    auto tail = normalize_concept(fields[2]);
    if (head.empty() || tail.empty()) throw malformed("empty concept");
    auto score = parse_score(fields[3]);
    if (!score) throw malformed("bad score '" + std::string(fields[3]) + "'");
    if (*score < 0.0) throw malformed("negative score");
    raw.push_back({{std::string(label), std::move(head), std::move(tail)}, *score});
  }
  if (in.bad()) throw Error(ErrorCode::Io, "read error");
  std::size_t lines = rep.lines;
  auto kb = from_assertions(raw, r_min, &rep);
  rep.lines = lines;
  return kb;
}

KnowledgeBase KnowledgeBase::load(const std::filesystem::path& path, double r_min,
                                  LoadReport* report) {
  std::string bytes = read_file(path);
  std::istringstream in(bytes);
  KnowledgeBase kb;
  try {
    kb = parse(in, r_min, report);
  } catch (const Error& e) {
    throw Error(e.code(), path.string() + ": " + e.what());
  }
  kb.digest_ = sha256_hex(bytes);
  return kb;
}

void KnowledgeBase::build_indices() {
  std::sort(assertions_.begin(), assertions_.end(),
            [](const auto& x, const auto& y) { return x.relation < y.relation; });
  concepts_.clear();
  by_concept_.clear();
  by_concept_label_.clear();
  for (std::size_t i = 0; i < assertions_.size(); ++i) {
    const auto& r = assertions_[i].relation;
    concepts_.push_back(r.head);
    concepts_.push_back(r.tail);
    by_concept_[r.head].push_back(i);
    by_concept_[r.tail].push_back(i);
    by_concept_label_[{r.head, r.label, Position::Head}].push_back(i);
    by_concept_label_[{r.tail, r.label, Position::Tail}].push_back(i);
  }
  std::sort(concepts_.begin(), concepts_.end());
  concepts_.erase(std::unique(concepts_.begin(), concepts_.end()), concepts_.end());
  for (auto& [c, idx] : by_concept_) {
    std::sort(idx.begin(), idx.end(), [&, &c = c](std::size_t x, std::size_t y) {
      const auto& rx = assertions_[x].relation;
      const auto& ry = assertions_[y].relation;
      return std::tie(rx.label, rx.other(c), rx.head) < std::tie(ry.label, ry.other(c), ry.head);
    });
  }
}

bool KnowledgeBase::contains(const Relation& r) const { return score(r).has_value(); }

std::optional<double> KnowledgeBase::score(const Relation& r) const {
  auto it = std::lower_bound(assertions_.begin(), assertions_.end(), r,
                             [](const ScoredAssertion& a, const Relation& key) { return a.relation < key; });
  if (it == assertions_.end() || it->relation != r) return std::nullopt;
  return it->score;
}

bool KnowledgeBase::has_concept(const Concept& c) const {
  return std::binary_search(concepts_.begin(), concepts_.end(), c);
}

std::vector<ScoredAssertion> KnowledgeBase::assertions_involving(const Concept& c) const {
  std::vector<ScoredAssertion> out;
  auto it = by_concept_.find(c);
  if (it == by_concept_.end()) return out;
  out.reserve(it->second.size());
  for (auto i : it->second) out.push_back(assertions_[i]);
  return out;
}

std::vector<ScoredAssertion> KnowledgeBase::assertions_with(const Concept& c, const RelationLabel& label,
                                                            Position pos) const {
  std::vector<ScoredAssertion> out;
  auto it = by_concept_label_.find({c, label, pos});
  if (it == by_concept_label_.end()) return out;
  for (auto i : it->second) out.push_back(assertions_[i]);
  return out;
}

std::vector<Attachment> attachable_concepts(const KnowledgeBase& kb, const SemanticNetwork& net) {
  std::vector<Attachment> out;
  for (const auto& c : net.concepts()) {
    for (auto& a : kb.assertions_involving(c)) {
      const auto& other = a.relation.other(c);
      if (net.has_concept(other)) continue;
      out.push_back({a, other});
    }
  }
  // An assertion with exactly one endpoint in the network is reached once,
  // from that endpoint, so no deduplication is needed.
  std::sort(out.begin(), out.end(), [](const Attachment& x, const Attachment& y) {
    return std::tie(x.new_concept, x.assertion.relation) < std::tie(y.new_concept, y.assertion.relation);
  });
  return out;
}

std::size_t substitutable_count(const KnowledgeBase& kb, const Concept& from, const Concept& to,
                                std::span<const Relation> rels) {
  std::size_t n = 0;
  for (const auto& r : rels) {
    if (!r.involves(from)) continue;
    Relation sub = r.substituted(from, to);
    if (sub.head == sub.tail) continue;
    if (kb.contains(sub)) ++n;
  }
  return n;
}

bool interchangeable(const KnowledgeBase& kb, const Concept& a, std::span<const Relation> rels_a,
                     const Concept& b, std::span<const Relation> rels_b, std::size_t min_shared) {
  if (a == b) return false;
  return substitutable_count(kb, b, a, rels_b) >= min_shared &&
         substitutable_count(kb, a, b, rels_a) >= min_shared;
}

const Concept& random_concept(const KnowledgeBase& kb, Rng& rng) {
  if (kb.concepts().empty()) throw Error(ErrorCode::InvalidArgument, "knowledge base has no concepts");
  return kb.concepts()[rng.index(kb.concepts().size())];
}

}  // namespace analogen
