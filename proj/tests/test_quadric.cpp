#include "conebm/quadric.hpp"

#include "doctest.h"

#include <set>
#include <sstream>

using namespace conebm;

namespace {

const Int kD = Int(17) * 47 * 103;

// Independent oracle: projective points of {f = 0} mod p by scanning all p^4
// tuples and deduplicating classes in a set.
std::set<Vec4> brute_force_points(const QuadricForm& q, Int p) {
  std::set<Vec4> classes;
  Vec4 x{};
  for (x[0] = 0; x[0] < p; ++x[0])
    for (x[1] = 0; x[1] < p; ++x[1])
      for (x[2] = 0; x[2] < p; ++x[2])
        for (x[3] = 0; x[3] < p; ++x[3]) {
          if (x == Vec4{0, 0, 0, 0}) continue;
          if (q.evaluate_mod(x, p) != 0) continue;
          int lead = 0;
          while (x[lead] == 0) ++lead;
          Int inv = mod_inverse(x[lead], p);
          Vec4 norm{};
          for (int i = 0; i < 4; ++i) norm[i] = x[i] * inv % p;
          classes.insert(norm);
        }
  return classes;
}

// Independent oracle for the Fano piece over F_p: full p^4 scan of the three
// defining equations.
std::set<std::array<Int, 4>> brute_force_fano_fp(const QuadricForm& q, Int p) {
  Vec4 e = q.diagonal_entries();
  Int p0 = mod_floor(e[0], p), q0 = mod_floor(e[1], p);
  Int r0 = mod_floor(e[2], p), s0 = mod_floor(e[3], p);
  std::set<std::array<Int, 4>> out;
  for (Int a = 0; a < p; ++a)
    for (Int b = 0; b < p; ++b)
      for (Int c = 0; c < p; ++c)
        for (Int d = 0; d < p; ++d) {
          if ((p0 + r0 * a * a + s0 * b * b) % p != 0) continue;
          if ((r0 * a * c + s0 * b * d) % p != 0) continue;
          if ((q0 + r0 * c * c + s0 * d * d) % p != 0) continue;
          out.insert({a, b, c, d});
        }
  return out;
}

}  // namespace

TEST_CASE("form construction and evaluation") {
  QuadricForm q = QuadricForm::default_instance();
  CHECK(q.is_diagonal());
  CHECK(q.determinant() == Int(47) * 103 * kD);
  CHECK(q.evaluate({35, 3, 4, 0}) == 0);
  CHECK(q.evaluate({1, 0, 1, 0}) == -102);
  CHECK(q.evaluate({1, 0, 0, 0}) == 1);

  Mat4 asym{};
  asym[0][1] = 1;  // not mirrored
  asym[0][0] = asym[1][1] = asym[2][2] = asym[3][3] = 1;
  CHECK_THROWS_AS(QuadricForm(asym), std::invalid_argument);
  CHECK_THROWS_AS(QuadricForm::diagonal({1, 1, 1, 0}), std::invalid_argument);

  // Off-diagonal entries contribute twice.
  Mat4 m{};
  m[0][0] = 0;
  m[2][3] = m[3][2] = -1;
  m[0][0] = 2;
  m[1][1] = -2;
  QuadricForm hyp(m);
  CHECK_FALSE(hyp.is_diagonal());
  CHECK(hyp.evaluate({0, 0, 1, 1}) == -2);
  CHECK(hyp.evaluate({1, 1, 0, 0}) == 0);
}

TEST_CASE("discriminant square classes") {
  CHECK(discriminant_class(QuadricForm::default_instance()).squarefree_rep() == 17);
  CHECK(discriminant_class(QuadricForm::diagonal({1, 1, 1, 1})).squarefree_rep() == 1);
  CHECK(discriminant_class(QuadricForm::diagonal({1, -1, 2, 3})).squarefree_rep() == -6);
  CHECK(discriminant_class(QuadricForm::diagonal({1, -1, 1, -1})).is_rational_square());
}

TEST_CASE("point-count formula") {
  QuadricForm q = QuadricForm::default_instance();
  CHECK(count_points_formula(q, 13) == 196);  // 17 = 4 mod 13, a square
  CHECK(count_points_formula(q, 3) == 10);    // 17 = 2 mod 3, a nonsquare
  CHECK_THROWS_AS(count_points_formula(q, 47), std::invalid_argument);
  CHECK_THROWS_AS(count_points_formula(q, 17), std::invalid_argument);
  CHECK_THROWS_AS(count_points_formula(q, 15), std::invalid_argument);
}

TEST_CASE("enumeration equals the brute-force oracle and the formula") {
  QuadricForm q = QuadricForm::default_instance();

  for (Int p : {3, 5, 7, 11}) {
    auto pts = enumerate_points_fp(q, p);
    auto oracle = brute_force_points(q, p);
    std::set<Vec4> got;
    for (const auto& pt : pts) got.insert(pt.coords());
    CHECK(got == oracle);
    CHECK(Int(pts.size()) == count_points_formula(q, p));
  }

  CHECK(enumerate_points_fp(q, 3).size() == 10);
  CHECK(enumerate_points_fp(QuadricForm::diagonal({1, -1, 1, -1}), 3).size() == 16);
  CHECK(enumerate_points_fp(QuadricForm::diagonal({1, 1, 1, 1}), 3).size() == 16);
  CHECK_THROWS_AS(enumerate_points_fp(q, 2), std::invalid_argument);

  SUBCASE("mod 17 the reduction is a cone over a conic") {
    auto pts = enumerate_points_fp(q, 17);
    std::set<Vec4> got;
    for (const auto& pt : pts) got.insert(pt.coords());
    CHECK(got.count({1, 0, 1, 0}) == 1);
    CHECK(got.count({1, 0, 16, 0}) == 1);
  }
}

TEST_CASE("count law for every good odd prime below 50") {
  QuadricForm q = QuadricForm::default_instance();
  for (Int p = 3; p < 50; ++p) {
    if (!is_prime(p) || q.determinant() % p == 0) continue;
    CAPTURE(static_cast<long long>(p));
    CHECK(Int(enumerate_points_fp(q, p).size()) == count_points_formula(q, p));
  }
}

TEST_CASE("smoothness of reductions") {
  QuadricForm q = QuadricForm::default_instance();
  auto sing = ProjPointFp::from_tuple(q, 17, {0, 0, 0, 1});
  CHECK_FALSE(is_smooth_mod_p(sing, q));
  auto pt = ProjPointFp::from_tuple(q, 17, {1, 0, 1, 0});
  CHECK(is_smooth_mod_p(pt, q));
  // 13 does not divide det, so the whole reduction is smooth.
  for (const auto& r : enumerate_points_fp(q, 13)) CHECK(is_smooth_mod_p(r, q));
}

TEST_CASE("cone points and tangent forms") {
  QuadricForm q = QuadricForm::default_instance();
  ConePoint p(q, {35, 3, 4, 0});
  TangentForm l = tangent_form(p, q);
  CHECK(l.coeffs() == Vec4{35, 141, -412, 0});
  CHECK(l.evaluate(p.coords()) == 0);

  CHECK_THROWS_AS(ConePoint(q, {70, 6, 8, 0}), std::invalid_argument);  // gcd 2
  CHECK_THROWS_AS(ConePoint(q, {1, 1, 1, 0}), std::invalid_argument);   // not on cone
  CHECK_THROWS_AS(ConePoint(q, {0, 0, 0, 0}), std::invalid_argument);

  ConePoint flip(q, {-35, -3, -4, 0});
  CHECK(p.same_projective_point(flip));
  ConePoint other(q, {35, -3, 4, 0});
  CHECK_FALSE(p.same_projective_point(other));
}

TEST_CASE("tangent sections have 1 or 2p+1 points") {
  QuadricForm q = QuadricForm::default_instance();
  ConePoint p(q, {35, 3, 4, 0});

  auto at3 = tangent_section_points(p, q, 3);
  REQUIRE(at3.size() == 1);
  CHECK(at3[0] == ProjPointFp::from_tuple(q, 3, {35 % 3, 0, 1, 0}));

  CHECK(tangent_section_points(p, q, 5).size() == 1);
  CHECK(tangent_section_points(p, q, 13).size() == 27);
  CHECK_THROWS_AS(tangent_section_points(p, q, 17), std::invalid_argument);

  for (Int pr : {3, 5, 7, 11, 13, 19, 23}) {
    auto pts = tangent_section_points(p, q, pr);
    size_t expected = legendre(q.determinant(), pr) == 1 ? 2 * static_cast<size_t>(pr) + 1 : 1;
    CHECK(pts.size() == expected);
  }
}

TEST_CASE("hensel lifting") {
  QuadricForm q = QuadricForm::default_instance();
  auto pt = ProjPointFp::from_tuple(q, 17, {1, 0, 1, 0});

  SUBCASE("worked step to precision 2") {
    PadicPoint lifted = hensel_lift(pt, q, 2);
    CHECK(lifted.coords() == Vec4{52, 0, 1, 0});
    CHECK(lifted.modulus() == 289);
  }

  SUBCASE("precision 1 is the identity") {
    CHECK(hensel_lift(pt, q, 1).coords() == Vec4{1, 0, 1, 0});
  }

  SUBCASE("lifts satisfy f = 0 to precision 8 and reduce correctly") {
    for (const auto& start : enumerate_points_fp(q, 17)) {
      if (!is_smooth_mod_p(start, q)) continue;
      PadicPoint lifted = hensel_lift(start, q, 8);
      CHECK(q.evaluate_mod(lifted.coords(), lifted.modulus()) == 0);
      CHECK(lifted.reduction_mod_p() == start.coords());
    }
  }

  SUBCASE("singular points do not lift") {
    auto sing = ProjPointFp::from_tuple(q, 17, {0, 0, 0, 1});
    CHECK_THROWS_AS(hensel_lift(sing, q, 2), std::invalid_argument);
  }
}

TEST_CASE("projective and p-adic point validation") {
  QuadricForm q = QuadricForm::default_instance();
  auto pt = ProjPointFp::from_tuple(q, 17, {2, 0, 2, 0});
  CHECK(pt.coords() == Vec4{1, 0, 1, 0});  // normalized
  auto pt2 = ProjPointFp::from_tuple(q, 17, {0, 0, 0, 5});
  CHECK(pt2.coords() == Vec4{0, 0, 0, 1});
  CHECK_THROWS_AS(ProjPointFp::from_tuple(q, 17, {1, 1, 1, 1}), std::invalid_argument);

  CHECK_THROWS_AS(PadicPoint(q, 17, 2, {17, 0, 17, 0}), std::invalid_argument);  // imprimitive
  CHECK_THROWS_AS(PadicPoint(q, 17, 2, {1, 0, 1, 0}), std::invalid_argument);    // f != 0 mod 289
  PadicPoint good(q, 17, 2, {52, 0, 1, 0});
  CHECK(good.reduction_mod_p() == Vec4{1, 0, 1, 0});
}

TEST_CASE("fano affine piece") {
  QuadricForm q = QuadricForm::default_instance();

  SUBCASE("empty over F_p when the discriminant is a nonsquare") {
    CHECK(fano_affine_piece_fp(q, 3).empty());
    CHECK(fano_affine_piece_fp(q, 5).empty());
  }

  SUBCASE("matches the full-scan oracle over F_13") {
    auto got = fano_affine_piece_fp(q, 13);
    auto oracle = brute_force_fano_fp(q, 13);
    CHECK(got.size() == oracle.size());
    CHECK(std::set<std::array<Int, 4>>(got.begin(), got.end()) == oracle);
    CHECK_FALSE(got.empty());
  }

  SUBCASE("nonempty over F_9, each point on exactly one conjugate plane") {
    auto pts = fano_affine_piece_fp2(q, 3);
    REQUIRE_FALSE(pts.empty());
    QuadExtField f9(3);
    CHECK(f9.nonresidue() == 2);
    int plus = 0, minus = 0;
    for (const auto& pt : pts) {
      int side = fano_plane_side(q, f9, pt);  // throws unless exactly one
      (side == 1 ? plus : minus)++;
    }
    CHECK(plus == minus);  // the two conics are conjugate
    CHECK(plus + minus == static_cast<int>(pts.size()));
  }

  SUBCASE("preconditions") {
    Mat4 m{};
    m[0][0] = 1;
    m[1][1] = 1;
    m[2][3] = m[3][2] = 1;
    CHECK_THROWS_AS(fano_affine_piece_fp(QuadricForm(m), 5), std::invalid_argument);
    CHECK_THROWS_AS(fano_affine_piece_fp(q, 47), std::invalid_argument);  // 47 | det
    CHECK_THROWS_AS(fano_affine_piece_fp2(q, 2), std::invalid_argument);
  }
}

TEST_CASE("quadratic extension field") {
  QuadExtField f(5);
  CHECK(f.nonresidue() == 2);
  Fp2 t = f.make(0, 1);
  CHECK(f.mul(t, t) == f.make(2));
  auto roots = f.sqrts_of(3);  // 3 is a nonresidue mod 5
  REQUIRE(roots.size() == 2);
  for (const auto& r : roots) CHECK(f.mul(r, r) == f.make(3));
  auto base_roots = f.sqrts_of(4);
  REQUIRE(base_roots.size() == 2);
  for (const auto& r : base_roots) CHECK(r.c1 == 0);
}

TEST_CASE("diagonalization") {
  SUBCASE("diagonal input stays put") {
    QuadricForm q = QuadricForm::default_instance();
    auto [d, basis] = diagonalize(q);
    CHECK(d.is_diagonal());
    CHECK(discriminant_class(d) == discriminant_class(q));
  }

  SUBCASE("hyperbolic block becomes diag(2,-2) up to squares") {
    Mat4 m{};
    m[0][0] = 1;
    m[1][1] = 1;
    m[2][3] = m[3][2] = 1;
    QuadricForm q(m);
    auto [d, basis] = diagonalize(q);
    CHECK(d.is_diagonal());
    auto e = d.diagonal_entries();
    CHECK(e[0] == 1);
    CHECK(e[1] == 1);
    CHECK(((e[2] == 2 && e[3] == -2) || (e[2] == -2 && e[3] == 2) ||
           (e[2] == 1 && e[3] == -1) || (e[2] == -1 && e[3] == 1)));
    CHECK(discriminant_class(d) == discriminant_class(q));
  }

  SUBCASE("doubled Lindqvist-style form has discriminant class pq") {
    // 2(X0^2 - 17*41 X1^2 - X2 X3), integral as a symmetric matrix.
    Mat4 m{};
    m[0][0] = 2;
    m[1][1] = -2 * 17 * 41;
    m[2][3] = m[3][2] = -1;
    QuadricForm q(m);
    auto [d, basis] = diagonalize(q);
    CHECK(d.is_diagonal());
    CHECK(discriminant_class(d).squarefree_rep() == 17 * 41);
    CHECK(discriminant_class(q).squarefree_rep() == 17 * 41);
  }

  SUBCASE("basis is an exact congruence B^T M B = D") {
    Mat4 m{};
    m[0][0] = 2;
    m[0][1] = m[1][0] = 3;
    m[1][1] = 1;
    m[2][2] = -5;
    m[2][3] = m[3][2] = 1;
    m[3][3] = 4;
    QuadricForm q(m);
    auto [d, basis] = diagonalize(q);

    std::array<std::array<Rational, 4>, 4> prod{};
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) {
        Rational acc(0);
        for (int k = 0; k < 4; ++k)
          for (int l = 0; l < 4; ++l)
            acc = acc + basis[k][i] * Rational(q.matrix()[k][l]) * basis[l][j];
        prod[i][j] = acc;
      }
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) {
        Rational expected(i == j ? d.matrix()[i][j] : 0);
        CHECK(prod[i][j] == expected);
      }
    CHECK(discriminant_class(d) == discriminant_class(q));
  }
}

TEST_CASE("form config parsing") {
  QuadricForm def = QuadricForm::default_instance();
  CHECK(parse_quadric_config("diag = [1, 47, -103, -82297]") == def);
  CHECK(parse_quadric_config("# the headline instance\ndiag=[1,47,-103,-82297]\n") == def);

  std::string mat =
      "matrix = [[1, 0, 0, 0], [0, 47, 0, 0], [0, 0, -103, 0], [0, 0, 0, -82297]]";
  CHECK(parse_quadric_config(mat) == def);

  std::istringstream stream("diag = [1, 1, -1, -1]");
  CHECK(parse_quadric_config(stream) == QuadricForm::diagonal({1, 1, -1, -1}));

  CHECK_THROWS_AS(parse_quadric_config("diag = [1, 2, 3]"), std::invalid_argument);
  CHECK_THROWS_AS(parse_quadric_config("nothing here"), std::invalid_argument);
  CHECK_THROWS_AS(parse_quadric_config("matrix = [[1,2,0,0],[0,1,0,0],[0,0,1,0],[0,0,0,1]]"),
                  std::invalid_argument);  // asymmetric

  CHECK(parse_point("35,3,4,0") == Vec4{35, 3, 4, 0});
  CHECK(parse_point("-1, 0, 16, 0") == Vec4{-1, 0, 16, 0});
  CHECK_THROWS_AS(parse_point("1,2,3"), std::invalid_argument);
  CHECK_THROWS_AS(parse_point("1,2,3,x"), std::invalid_argument);
}
