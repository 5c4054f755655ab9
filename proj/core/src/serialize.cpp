#include "conebm/serialize.hpp"

#include <nlohmann/json.hpp>

#include <sstream>

namespace conebm {

namespace {

using json = nlohmann::ordered_json;

int64_t to_i64(Int v) {
  if (v > INT64_MAX || v < INT64_MIN)
    throw OverflowError("serialized value exceeds 64 bits: " + int_to_string(v));
  return static_cast<int64_t>(v);
}

json tuple_json(const Vec4& x) {
  json a = json::array();
  for (Int c : x) a.push_back(to_i64(c));
  return a;
}

std::string tuple_key(const Vec4& x) {
  return "(" + int_to_string(x[0]) + "," + int_to_string(x[1]) + "," + int_to_string(x[2]) + "," +
         int_to_string(x[3]) + ")";
}

void census_fields(const SearchCensus& census, json& j) {
  j["H"] = to_i64(census.height_bound);
  json sols = json::array();
  for (const auto& s : census.solutions) sols.push_back(tuple_json(s.coords()));
  j["solutions"] = std::move(sols);
  j["census_mod"] = to_i64(census.census_mod);
  json c = json::object();
  for (const auto& [key, count] : census.census) c[tuple_key(key)] = to_i64(count);
  j["census"] = std::move(c);
}

void census_tsv(const SearchCensus& census, std::ostringstream& out) {
  out << "# H=" << int_to_string(census.height_bound)
      << " census_mod=" << int_to_string(census.census_mod) << "\n";
  out << "# solutions\n";
  out << "x0\tx1\tx2\tx3\n";
  for (const auto& s : census.solutions) {
    out << int_to_string(s[0]) << '\t' << int_to_string(s[1]) << '\t' << int_to_string(s[2]) << '\t'
        << int_to_string(s[3]) << "\n";
  }
  out << "# census\n";
  out << "class\tcount\n";
  for (const auto& [key, count] : census.census) {
    out << tuple_key(key) << '\t' << int_to_string(count) << "\n";
  }
}

}  // namespace

std::string to_json(const OrbitReport& report) {
  json j;
  j["base"] = tuple_json(report.base);
  j["prime"] = to_i64(report.prime);
  json table = json::object();
  for (const auto& [lam, inv] : report.table) table[int_to_string(lam)] = inv.str();
  j["table"] = std::move(table);
  j["zero_count"] = report.zero_count;
  j["half_count"] = report.half_count;
  return j.dump(2) + "\n";
}

std::string to_tsv(const OrbitReport& report) {
  std::ostringstream out;
  out << "# base=" << tuple_key(report.base) << " prime=" << int_to_string(report.prime)
      << " zero_count=" << report.zero_count << " half_count=" << report.half_count << "\n";
  out << "lambda\tinvariant\n";
  for (const auto& [lam, inv] : report.table) out << int_to_string(lam) << '\t' << inv.str() << "\n";
  return out.str();
}

std::string to_json(const SearchCensus& census) {
  json j;
  census_fields(census, j);
  return j.dump(2) + "\n";
}

std::string to_tsv(const SearchCensus& census) {
  std::ostringstream out;
  census_tsv(census, out);
  return out.str();
}

std::string to_json(const VerifyReport& report) {
  json j;
  census_fields(report.census, j);
  json viol = json::array();
  for (const auto& key : report.obstruction_violations) viol.push_back(tuple_key(key));
  j["obstruction_violations"] = std::move(viol);
  j["coverage"] = {{"invariant_zero_classes", to_i64(report.invariant_zero_classes)},
                   {"hit", to_i64(report.hit)}};
  return j.dump(2) + "\n";
}

std::string to_tsv(const VerifyReport& report) {
  std::ostringstream out;
  census_tsv(report.census, out);
  out << "# obstruction_violations\n";
  out << "class\n";
  for (const auto& key : report.obstruction_violations) out << tuple_key(key) << "\n";
  out << "# coverage\n";
  out << "invariant_zero_classes\t" << int_to_string(report.invariant_zero_classes) << "\n";
  out << "hit\t" << int_to_string(report.hit) << "\n";
  return out.str();
}

std::vector<CountRow> count_rows(const QuadricForm& q, Int lo, Int hi) {
  if (lo > hi) throw std::invalid_argument("count_rows: empty prime range");
  std::vector<CountRow> rows;
  for (Int p = std::max(Int(3), lo); p <= hi; ++p) {
    if (p == 2 || !is_prime(p)) continue;
    CountRow row;
    row.p = p;
    row.enumerated = static_cast<Int>(enumerate_points_fp(q, p).size());
    if (q.determinant() % p == 0) {
      row.note = "singular reduction, formula skipped";
    } else {
      row.formula = count_points_formula(q, p);
      row.match = row.enumerated == *row.formula;
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

bool all_rows_match(const std::vector<CountRow>& rows) {
  for (const auto& row : rows) {
    if (row.match.has_value() && !*row.match) return false;
  }
  return true;
}

std::string to_json(const std::vector<CountRow>& rows) {
  json arr = json::array();
  for (const auto& row : rows) {
    json j;
    j["p"] = to_i64(row.p);
    j["enumerated"] = to_i64(row.enumerated);
    j["formula"] = row.formula ? json(to_i64(*row.formula)) : json(nullptr);
    j["match"] = row.match ? json(*row.match) : json(nullptr);
    if (!row.note.empty()) j["note"] = row.note;
    arr.push_back(std::move(j));
  }
  return arr.dump(2) + "\n";
}

std::string to_tsv(const std::vector<CountRow>& rows) {
  std::ostringstream out;
  out << "p\tenumerated\tformula\tmatch\tnote\n";
  for (const auto& row : rows) {
    out << int_to_string(row.p) << '\t' << int_to_string(row.enumerated) << '\t';
    out << (row.formula ? int_to_string(*row.formula) : "-") << '\t';
    out << (row.match ? (*row.match ? "ok" : "MISMATCH") : "-") << '\t';
    out << (row.note.empty() ? "-" : row.note) << "\n";
  }
  return out.str();
}

LinesReport make_lines_report(const QuadricForm& q, const ConePoint& base, Int p,
                              bool with_extension) {
  LinesReport report;
  report.prime = p;
  report.delta = discriminant_class(q).squarefree_rep();
  report.delta_square_mod_p = legendre(q.determinant(), p) == 1;
  report.rational_lines = report.delta_square_mod_p ? 2 * (p + 1) : 0;
  report.fano_points_fp = static_cast<Int>(fano_affine_piece_fp(q, p).size());
  if (with_extension) {
    QuadExtField field(p);
    auto pts = fano_affine_piece_fp2(q, p);
    report.fano_points_fp2 = static_cast<Int>(pts.size());
    bool ok = true;
    for (const auto& pt : pts) {
      try {
        fano_plane_side(q, field, pt);
      } catch (const std::logic_error&) {
        ok = false;
        break;
      }
    }
    report.fano_plane_condition = ok;
  }
  report.base_point = base.coords();
  report.section_points = static_cast<Int>(tangent_section_points(base, q, p).size());
  report.section_expected = report.delta_square_mod_p ? 2 * p + 1 : 1;
  return report;
}

std::string to_json(const LinesReport& report) {
  json j;
  j["prime"] = to_i64(report.prime);
  j["delta"] = to_i64(report.delta);
  j["delta_square_mod_p"] = report.delta_square_mod_p;
  j["rational_lines"] = to_i64(report.rational_lines);
  j["fano_points_fp"] = to_i64(report.fano_points_fp);
  j["fano_points_fp2"] = report.fano_points_fp2 ? json(to_i64(*report.fano_points_fp2)) : json(nullptr);
  j["fano_plane_condition"] =
      report.fano_plane_condition ? json(*report.fano_plane_condition) : json(nullptr);
  j["base_point"] = tuple_json(report.base_point);
  j["section_points"] = to_i64(report.section_points);
  j["section_expected"] = to_i64(report.section_expected);
  return j.dump(2) + "\n";
}

std::string to_tsv(const LinesReport& report) {
  std::ostringstream out;
  out << "prime\t" << int_to_string(report.prime) << "\n";
  out << "delta\t" << int_to_string(report.delta) << "\n";
  out << "delta_square_mod_p\t" << (report.delta_square_mod_p ? "true" : "false") << "\n";
  out << "rational_lines\t" << int_to_string(report.rational_lines) << "\n";
  out << "fano_points_fp\t" << int_to_string(report.fano_points_fp) << "\n";
  out << "fano_points_fp2\t" << (report.fano_points_fp2 ? int_to_string(*report.fano_points_fp2) : "-")
      << "\n";
  out << "fano_plane_condition\t"
      << (report.fano_plane_condition ? (*report.fano_plane_condition ? "true" : "false") : "-")
      << "\n";
  out << "base_point\t" << tuple_key(report.base_point) << "\n";
  out << "section_points\t" << int_to_string(report.section_points) << "\n";
  out << "section_expected\t" << int_to_string(report.section_expected) << "\n";
  return out.str();
}

}  // namespace conebm
