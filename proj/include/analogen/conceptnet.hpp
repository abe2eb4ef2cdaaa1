#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string_view>

#include "analogen/kb.hpp"

namespace analogen {

struct ConvertReport {
  std::size_t rows = 0;  // data rows seen (header excluded)
  std::size_t malformed = 0;
  std::size_t below_threshold = 0;
  std::size_t duplicates = 0;
  std::size_t written = 0;
};

/// Parses one ConceptNet dump row `relation,concept1,concept2,score`.
/// Accepts URI forms such as `/r/IsA` and `/c/en/ice_cream`. Returns nullopt
/// when the row is malformed. Negated assertions carry a negative score and
/// are dropped by convert_conceptnet.
std::optional<ScoredAssertion> parse_conceptnet_row(std::string_view line);

/// Streams CSV rows to KB TSV lines: normalized, filtered at `r_min`,
/// deduplicated to the max score, sorted. A first row whose score column is not
/// numeric is taken as a header.
ConvertReport convert_conceptnet(std::istream& csv, std::ostream& tsv, double r_min);

/// File wrapper. Throws Error(Parse) without writing when more than half of
/// the rows are malformed.
ConvertReport convert_conceptnet_file(const std::filesystem::path& csv_path,
                                      const std::filesystem::path& tsv_path, double r_min);

/// One TSV line (no newline) for an assertion.
std::string format_assertion(const ScoredAssertion& a);

}  // namespace analogen
