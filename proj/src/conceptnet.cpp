#include "analogen/conceptnet.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

#include <boost/tokenizer.hpp>

#include "analogen/error.hpp"
#include "analogen/io.hpp"

namespace analogen {

namespace {

std::string_view strip(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::optional<std::vector<std::string>> split_csv(std::string_view line) {
  using Sep = boost::escaped_list_separator<char>;
  std::string owned(line);
  try {
    boost::tokenizer<Sep> tok(owned, Sep('\\', ',', '"'));
    return std::vector<std::string>(tok.begin(), tok.end());
  } catch (const boost::escaped_list_error&) {
    return std::nullopt;
  }
}

std::optional<double> to_number(std::string_view s) {
  s = strip(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(v)) return std::nullopt;
  return v;
}

std::string relation_name(std::string_view s) {
  s = strip(s);
  if (s.starts_with("/r/")) s.remove_prefix(3);
  std::string out(s);
  if (out.empty() || std::any_of(out.begin(), out.end(), [](unsigned char c) { return std::isspace(c) || c == '/'; }))
    return {};
  return out;
}

// "/c/en/ice_cream/n" -> "ice cream"
std::string concept_name(std::string_view s) {
  s = strip(s);
  if (s.starts_with("/c/")) {
    s.remove_prefix(3);
    auto lang_end = s.find('/');
    if (lang_end == std::string_view::npos) return {};
    s.remove_prefix(lang_end + 1);
    s = s.substr(0, s.find('/'));
  }
  std::string text(s);
  std::replace(text.begin(), text.end(), '_', ' ');
  return normalize_concept(text);
}

}  // namespace

std::optional<ScoredAssertion> parse_conceptnet_row(std::string_view line) {
  auto fields = split_csv(line);
  if (!fields || fields->size() < 4) return std::nullopt;
  auto label = relation_name((*fields)[0]);
  auto head = concept_name((*fields)[1]);
  auto tail = concept_name((*fields)[2]);
  auto score = to_number((*fields)[3]);
  if (label.empty() || head.empty() || tail.empty() || !score) return std::nullopt;
  return ScoredAssertion{{std::move(label), std::move(head), std::move(tail)}, *score};
}

std::string format_assertion(const ScoredAssertion& a) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, a.score);
  std::string score = ec == std::errc{} ? std::string(buf, ptr) : std::to_string(a.score);
  return a.relation.label + "\t" + a.relation.head + "\t" + a.relation.tail + "\t" + score;
}

ConvertReport convert_conceptnet(std::istream& csv, std::ostream& tsv, double r_min) {
  ConvertReport rep;
  std::vector<ScoredAssertion> kept;
  std::string line;
  bool first = true;
  while (std::getline(csv, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (strip(line).empty()) continue;
    auto row = parse_conceptnet_row(line);
    if (first) {
      first = false;
      auto fields = split_csv(line);
      if (!row && fields && fields->size() >= 4 && !to_number((*fields)[3])) continue;  // header
    }
    ++rep.rows;
    if (!row) {
      ++rep.malformed;
      continue;
    }
    if (row->relation.head == row->relation.tail) {
      ++rep.malformed;
      continue;
    }
    // Negative scores mark negated assertions.
    if (row->score < 0.0 || row->score < r_min) {
      ++rep.below_threshold;
      continue;
    }
    kept.push_back(std::move(*row));
  }
  LoadReport load;
  auto kb = KnowledgeBase::from_assertions(kept, r_min, &load);
  rep.duplicates = load.duplicates;
  for (const auto& a : kb.assertions()) tsv << format_assertion(a) << '\n';
  rep.written = kb.size();
  return rep;
}

ConvertReport convert_conceptnet_file(const std::filesystem::path& csv_path, const std::filesystem::path& tsv_path,
                                      double r_min) {
  std::istringstream in(read_file(csv_path));
  std::ostringstream out;
  auto rep = convert_conceptnet(in, out, r_min);
  if (rep.rows > 0 && rep.malformed * 2 > rep.rows)
    throw Error(ErrorCode::Parse, csv_path.string() + ": " + std::to_string(rep.malformed) + " of " +
                                      std::to_string(rep.rows) + " rows malformed");
  write_file(tsv_path, out.str());
  return rep;
}

}  // namespace analogen
