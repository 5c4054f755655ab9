// Command-line front end: point-count tables, scalar-orbit reports, integral
// point search, end-to-end obstruction verification, and line counts.
#include "conebm/serialize.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>

namespace {

using namespace conebm;

constexpr int kExitPass = 0;
constexpr int kExitAssertionFailure = 1;
constexpr int kExitUsage = 2;

struct Options {
  std::string quadric_path;
  std::string format = "json";
  std::string prime = "17";
  Int height = 500;
  int precision = 8;
  std::string base_point;
  std::string point;
  bool extension = false;
  bool no_extension = false;
};

QuadricForm resolve_quadric(const Options& opt) {
  if (opt.quadric_path.empty()) return QuadricForm::default_instance();
  std::ifstream in(opt.quadric_path);
  if (!in) throw std::invalid_argument("cannot open quadric config: " + opt.quadric_path);
  return parse_quadric_config(in);
}

Int parse_prime(const std::string& s) {
  Int p = parse_int(s);
  if (!is_prime(p)) throw std::invalid_argument("--prime: " + s + " is not prime");
  return p;
}

// "3..30" or a single prime.
std::pair<Int, Int> parse_prime_range(const std::string& s) {
  auto dots = s.find("..");
  if (dots == std::string::npos) {
    Int p = parse_prime(s);
    return {p, p};
  }
  Int lo = parse_int(s.substr(0, dots));
  Int hi = parse_int(s.substr(dots + 2));
  if (lo > hi) throw std::invalid_argument("--prime: empty range " + s);
  return {lo, hi};
}

ConePoint resolve_base_point(const Options& opt, const QuadricForm& q,
                             std::vector<ConePoint>* pool_out) {
  std::vector<ConePoint> found = search_integral_points(q, std::min<Int>(opt.height, 40));
  std::optional<ConePoint> base;
  if (!opt.base_point.empty()) {
    base = ConePoint(q, parse_point(opt.base_point));
  } else if (!found.empty()) {
    base = found.front();
  } else {
    throw std::invalid_argument("no base point found up to height 40; pass --base-point");
  }
  if (pool_out != nullptr) {
    for (const auto& s : found) {
      bool fresh = !s.same_projective_point(*base);
      for (const auto& other : *pool_out) fresh = fresh && !s.same_projective_point(other);
      if (fresh) pool_out->push_back(s);
      if (pool_out->size() >= 8) break;
    }
  }
  return *base;
}

void emit(const Options& opt, const std::string& json_text, const std::string& tsv_text) {
  std::cout << (opt.format == "tsv" ? tsv_text : json_text);
}

int cmd_count(const Options& opt) {
  QuadricForm q = resolve_quadric(opt);
  auto [lo, hi] = parse_prime_range(opt.prime);
  auto rows = count_rows(q, lo, hi);
  emit(opt, to_json(rows), to_tsv(rows));
  return all_rows_match(rows) ? kExitPass : kExitAssertionFailure;
}

int cmd_orbits(const Options& opt) {
  QuadricForm q = resolve_quadric(opt);
  Int p = parse_prime(opt.prime);
  if (opt.point.empty()) throw std::invalid_argument("orbits: --point is required");
  Vec4 tuple = parse_point(opt.point);
  std::vector<ConePoint> pool;
  ConePoint base = resolve_base_point(opt, q, &pool);
  BrauerClass cls(q, base, pool);
  OrbitReport report = scalar_orbit_classification(cls, tuple, p, opt.precision);
  emit(opt, to_json(report), to_tsv(report));
  return kExitPass;
}

int cmd_search(const Options& opt) {
  QuadricForm q = resolve_quadric(opt);
  Int p = parse_prime(opt.prime);
  auto solutions = search_integral_points(q, opt.height);
  SearchCensus census = reduction_census(solutions, p, opt.height);
  emit(opt, to_json(census), to_tsv(census));
  return kExitPass;
}

int cmd_verify(const Options& opt) {
  QuadricForm q = resolve_quadric(opt);
  Int p = parse_prime(opt.prime);
  std::optional<ConePoint> base;
  if (!opt.base_point.empty()) base = ConePoint(q, parse_point(opt.base_point));
  VerifyReport report = verify_theorem(q, opt.height, p, opt.precision, base);
  emit(opt, to_json(report), to_tsv(report));
  if (!report.passed) {
    std::cerr << "verify: " << report.obstruction_violations.size()
              << " obstruction violation(s) found\n";
    return kExitAssertionFailure;
  }
  return kExitPass;
}

int cmd_lines(const Options& opt) {
  QuadricForm q = resolve_quadric(opt);
  Int p = parse_prime(opt.prime);
  ConePoint base = resolve_base_point(opt, q, nullptr);
  bool with_ext = opt.extension || (!opt.no_extension && p <= 13);
  LinesReport report = make_lines_report(q, base, p, with_ext);
  emit(opt, to_json(report), to_tsv(report));
  bool ok = report.section_points == report.section_expected &&
            (!report.fano_plane_condition || *report.fano_plane_condition) &&
            (report.delta_square_mod_p || report.fano_points_fp == 0);
  return ok ? kExitPass : kExitAssertionFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Brauer-Manin obstruction to strong approximation on punctured cones over quadric "
               "surfaces"};
  app.require_subcommand(1);

  Options opt;
  app.add_option("--quadric", opt.quadric_path,
                 "Path to a form config ('diag = [..]' or 'matrix = [[..],..]')");
  app.add_option("--format", opt.format, "Output format: json or tsv")
      ->check(CLI::IsMember({"json", "tsv"}));

  auto add_common = [&](CLI::App* sub, const char* prime_help) {
    sub->add_option("--prime", opt.prime, prime_help);
    sub->add_option("--height", opt.height, "Height bound for the integer search");
    sub->add_option("--precision", opt.precision, "p-adic working precision")
        ->check(CLI::Range(1, 24));
    sub->add_option("--base-point", opt.base_point, "Base point as 'x0,x1,x2,x3'");
  };

  CLI::App* count = app.add_subcommand("count", "Enumeration vs. point-count formula over F_p");
  count->add_option("--prime", opt.prime, "Prime or range, e.g. 13 or 3..30");

  CLI::App* orbits = app.add_subcommand("orbits", "Invariant of every scalar multiple of a tuple");
  add_common(orbits, "Obstruction prime (default 17)");
  orbits->add_option("--point", opt.point, "Residue tuple as 'x0,x1,x2,x3'")->required();

  CLI::App* search = app.add_subcommand("search", "Coprime integral points up to a height bound");
  add_common(search, "Census modulus (default 17)");

  CLI::App* verify = app.add_subcommand("verify", "End-to-end obstruction check");
  add_common(verify, "Obstruction prime (default 17)");

  CLI::App* lines = app.add_subcommand("lines", "Fano and tangent-section counts at a prime");
  add_common(lines, "Prime of good reduction");
  lines->add_flag("--extension", opt.extension, "Force the F_{p^2} Fano enumeration");
  lines->add_flag("--no-extension", opt.no_extension, "Skip the F_{p^2} Fano enumeration");

  // Subcommand-specific defaults.
  lines->parse_complete_callback([&] {
    if (lines->count("--prime") == 0) opt.prime = "3";
  });
  count->parse_complete_callback([&] {
    if (count->count("--prime") == 0) opt.prime = "3..47";
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (app.got_subcommand(count)) return cmd_count(opt);
    if (app.got_subcommand(orbits)) return cmd_orbits(opt);
    if (app.got_subcommand(search)) return cmd_search(opt);
    if (app.got_subcommand(verify)) return cmd_verify(opt);
    if (app.got_subcommand(lines)) return cmd_lines(opt);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitAssertionFailure;
  }
  return kExitUsage;
}
