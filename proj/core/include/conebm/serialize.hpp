// Machine-readable output: JSON and TSV emitters for the report types, plus
// the point-count and line-count report builders used by the CLI.
#pragma once

#include "conebm/search.hpp"

namespace conebm {

std::string to_json(const OrbitReport& report);
std::string to_tsv(const OrbitReport& report);

std::string to_json(const SearchCensus& census);
std::string to_tsv(const SearchCensus& census);

std::string to_json(const VerifyReport& report);
std::string to_tsv(const VerifyReport& report);

// One row of the enumeration-versus-formula point-count table. The formula
// is skipped (and match left open) at primes of singular reduction.
struct CountRow {
  Int p = 0;
  Int enumerated = 0;
  std::optional<Int> formula;
  std::optional<bool> match;
  std::string note;
};

std::vector<CountRow> count_rows(const QuadricForm& q, Int lo, Int hi);
bool all_rows_match(const std::vector<CountRow>& rows);
std::string to_json(const std::vector<CountRow>& rows);
std::string to_tsv(const std::vector<CountRow>& rows);

// Rational-line and tangent-section counts at one prime of good reduction.
struct LinesReport {
  Int prime = 0;
  Int delta = 0;
  bool delta_square_mod_p = false;
  Int rational_lines = 0;  // 2(p+1) when the discriminant is a square mod p
  Int fano_points_fp = 0;
  std::optional<Int> fano_points_fp2;
  std::optional<bool> fano_plane_condition;
  Vec4 base_point{};
  Int section_points = 0;
  Int section_expected = 0;
};

LinesReport make_lines_report(const QuadricForm& q, const ConePoint& base, Int p,
                              bool with_extension);
std::string to_json(const LinesReport& report);
std::string to_tsv(const LinesReport& report);

}  // namespace conebm
