#include "conebm/search.hpp"

#include <algorithm>
#include <set>

namespace conebm {

namespace {

// Solutions of a diagonal form, solving for x0 and scanning the other
// coordinates over nonnegative values; sign variants are expanded afterwards
// since every coefficient is attached to a square.
void search_diagonal(const QuadricForm& q, Int h, std::vector<Vec4>& out) {
  const Vec4 d = q.diagonal_entries();
  Int abs_sum = 0;
  for (Int e : d) abs_sum = checked_add(abs_sum, abs_int(e));

  // |d_j| x_j^2 <= H^2 * sum of the other |d_i| for any solution in the box.
  auto cap = [&](int j) {
    Int bound = isqrt_floor(checked_mul(checked_mul(h, h), abs_sum - abs_int(d[j])) / abs_int(d[j]));
    return std::min(h, bound);
  };
  const Int c1 = cap(1), c2 = cap(2), c3 = cap(3);

  std::set<Vec4> seen;
  for (Int x3 = 0; x3 <= c3; ++x3) {
    for (Int x2 = 0; x2 <= c2; ++x2) {
      for (Int x1 = 0; x1 <= c1; ++x1) {
        Int n = -(d[1] * x1 * x1 + d[2] * x2 * x2 + d[3] * x3 * x3);
        if (n % d[0] != 0) continue;
        Int t = n / d[0];
        if (t < 0 || t > h * h) continue;
        Int x0;
        if (!is_perfect_square(t, &x0)) continue;
        for (Int s0 : (x0 == 0 ? std::vector<Int>{0} : std::vector<Int>{x0, -x0})) {
          for (Int s1 : (x1 == 0 ? std::vector<Int>{0} : std::vector<Int>{x1, -x1})) {
            for (Int s2 : (x2 == 0 ? std::vector<Int>{0} : std::vector<Int>{x2, -x2})) {
              for (Int s3 : (x3 == 0 ? std::vector<Int>{0} : std::vector<Int>{x3, -x3})) {
                Vec4 v{s0, s1, s2, s3};
                Int g = 0;
                for (Int c : v) g = gcd_int(g, c);
                if (g == 1) seen.insert(v);
              }
            }
          }
        }
      }
    }
  }
  out.assign(seen.begin(), seen.end());
}

// General symmetric forms: scan (x1,x2,x3) and solve the quadratic in x0
// exactly via a perfect-square discriminant.
void search_general(const QuadricForm& q, Int h, std::vector<Vec4>& out) {
  const Mat4& m = q.matrix();
  std::set<Vec4> seen;
  for (Int x1 = -h; x1 <= h; ++x1) {
    for (Int x2 = -h; x2 <= h; ++x2) {
      for (Int x3 = -h; x3 <= h; ++x3) {
        Int a = m[0][0];
        Int b = 2 * (m[0][1] * x1 + m[0][2] * x2 + m[0][3] * x3);
        Int c = q.evaluate({0, x1, x2, x3});
        std::vector<Int> roots;
        if (a == 0) {
          if (b != 0) {
            if (c % b == 0) roots.push_back(-c / b);
          } else if (c == 0) {
            for (Int x0 = -h; x0 <= h; ++x0) roots.push_back(x0);
          }
        } else {
          Int disc = checked_sub(checked_mul(b, b), checked_mul(4, checked_mul(a, c)));
          Int s;
          if (disc >= 0 && is_perfect_square(disc, &s)) {
            for (Int num : {-b + s, -b - s}) {
              if (num % (2 * a) == 0) roots.push_back(num / (2 * a));
              if (s == 0) break;
            }
          }
        }
        for (Int x0 : roots) {
          if (abs_int(x0) > h) continue;
          Vec4 v{x0, x1, x2, x3};
          Int g = 0;
          for (Int cc : v) g = gcd_int(g, cc);
          if (g == 1 && q.evaluate(v) == 0) seen.insert(v);
        }
      }
    }
  }
  out.assign(seen.begin(), seen.end());
}

}  // namespace

std::vector<ConePoint> search_integral_points(const QuadricForm& q, Int height) {
  if (height < 1) throw std::invalid_argument("search_integral_points: height must be >= 1");
  // Reject heights that could push intermediate values past 127 bits.
  checked_mul(checked_pow(height, 4), q.max_abs_coeff());

  std::vector<Vec4> raw;
  if (q.is_diagonal()) {
    search_diagonal(q, height, raw);
  } else {
    search_general(q, height, raw);
  }
  std::vector<ConePoint> out;
  out.reserve(raw.size());
  for (const auto& v : raw) out.emplace_back(q, v);
  return out;  // std::set iteration is already lexicographic
}

SearchCensus reduction_census(const std::vector<ConePoint>& solutions, Int p, Int height) {
  if (!is_prime(p)) throw std::invalid_argument("reduction_census: modulus must be prime");
  SearchCensus out;
  out.height_bound = height;
  out.solutions = solutions;
  out.census_mod = p;
  for (const auto& s : solutions) {
    Vec4 key{};
    for (int i = 0; i < 4; ++i) key[i] = mod_floor(s[i], p);
    ++out.census[key];
  }
  return out;
}

VerifyReport verify_theorem(const QuadricForm& q, Int height, Int p, int precision,
                            std::optional<ConePoint> base) {
  if (!is_prime(p) || p == 2) throw std::invalid_argument("verify_theorem: p must be an odd prime");

  std::vector<ConePoint> solutions = search_integral_points(q, height);
  if (!base && solutions.empty())
    throw std::runtime_error("verify_theorem: no base point found up to height " +
                             int_to_string(height));
  ConePoint base_point = base ? *base : solutions.front();

  // A handful of projectively distinct solutions back the base-point switch.
  std::vector<ConePoint> pool;
  for (const auto& s : solutions) {
    bool fresh = !s.same_projective_point(base_point);
    for (const auto& other : pool) fresh = fresh && !s.same_projective_point(other);
    if (fresh) pool.push_back(s);
    if (pool.size() >= 8) break;
  }
  BrauerClass cls(q, base_point, pool);

  VerifyReport report;
  report.height_bound = height;
  report.prime = p;
  report.base_point = base_point.coords();
  report.census = reduction_census(solutions, p, height);

  // Classify every smooth residue tuple on the cone mod p, one orbit at a
  // time: the scalar law fills the p-1 multiples from a single lift.
  Vec4 x{};
  for (x[0] = 0; x[0] < p; ++x[0]) {
    for (x[1] = 0; x[1] < p; ++x[1]) {
      for (x[2] = 0; x[2] < p; ++x[2]) {
        for (x[3] = 0; x[3] < p; ++x[3]) {
          if (x == Vec4{0, 0, 0, 0}) continue;
          if (report.classification.count(x) != 0) continue;
          if (q.evaluate_mod(x, p) != 0) continue;
          if (!is_smooth_tuple_mod_p(q, p, x)) continue;
          OrbitReport orbit = scalar_orbit_classification(cls, x, p, precision);
          for (const auto& [lam, inv] : orbit.table) {
            Vec4 key{};
            for (int i = 0; i < 4; ++i) key[i] = lam * x[i] % p;
            report.classification.emplace(key, inv);
          }
        }
      }
    }
  }

  for (const auto& [key, inv] : report.classification) {
    if (inv.is_zero()) ++report.invariant_zero_classes;
  }
  for (const auto& [key, count] : report.census.census) {
    auto it = report.classification.find(key);
    if (it == report.classification.end() || it->second.is_half()) {
      report.obstruction_violations.push_back(key);
    } else {
      ++report.hit;
    }
  }
  report.passed = report.obstruction_violations.empty();
  return report;
}

}  // namespace conebm
