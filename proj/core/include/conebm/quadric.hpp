// Integral quaternary quadratic forms: discriminant square classes, point
// enumeration and counting over F_p, tangent forms and tangent-plane
// sections, the affine piece of the Fano scheme of lines, and Hensel lifting.
#pragma once

#include "conebm/local_arith.hpp"

#include <array>
#include <iosfwd>
#include <optional>
#include <vector>

namespace conebm {

using Vec4 = std::array<Int, 4>;
using Mat4 = std::array<std::array<Int, 4>, 4>;
using RationalMat4 = std::array<std::array<Rational, 4>, 4>;

// A nondegenerate quaternary quadratic form with symmetric integer matrix M,
// evaluated as f(x) = x^T M x.
class QuadricForm {
 public:
  explicit QuadricForm(const Mat4& m);
  static QuadricForm diagonal(const Vec4& entries);
  // The built-in instance diag(1, 47, -103, -17*47*103).
  static QuadricForm default_instance();

  Int evaluate(const Vec4& x) const;
  // f(x) mod m, for residue vectors with entries in [0, m).
  Int evaluate_mod(const Vec4& x, Int m) const;
  // M x; the gradient of f is 2 M x.
  Vec4 apply_matrix(const Vec4& x) const;
  Vec4 apply_matrix_mod(const Vec4& x, Int m) const;

  Int determinant() const { return det_; }
  bool is_diagonal() const { return diagonal_; }
  const Mat4& matrix() const { return m_; }
  Vec4 diagonal_entries() const;
  Int max_abs_coeff() const;

  friend bool operator==(const QuadricForm& a, const QuadricForm& b) { return a.m_ == b.m_; }

 private:
  Mat4 m_;
  Int det_;
  bool diagonal_;
};

// The square class of det M, kept as its squarefree representative.
class Discriminant {
 public:
  explicit Discriminant(Int squarefree_rep);
  Int squarefree_rep() const { return rep_; }
  bool is_rational_square() const { return rep_ == 1; }

  friend bool operator==(const Discriminant& a, const Discriminant& b) { return a.rep_ == b.rep_; }

 private:
  Int rep_;
};

Discriminant discriminant_class(const QuadricForm& q, Int factor_cap = Int(1) << 50);

// A coprime integer 4-tuple on the cone {f = 0}.
class ConePoint {
 public:
  ConePoint(const QuadricForm& q, const Vec4& coords);
  const Vec4& coords() const { return x_; }
  Int operator[](int i) const { return x_[i]; }
  // Coprime tuples define the same projective point iff they agree up to sign.
  bool same_projective_point(const ConePoint& other) const;

  friend bool operator==(const ConePoint& a, const ConePoint& b) { return a.x_ == b.x_; }
  friend bool operator<(const ConePoint& a, const ConePoint& b) { return a.x_ < b.x_; }

 private:
  Vec4 x_;
};

// The linear form with coefficients M x cutting the tangent hyperplane at a
// point x of the cone. For the default diagonal instance the coefficients at
// base (x0,x1,x2,x3) are (x0, 47 x1, -103 x2, -17*47*103 x3).
class TangentForm {
 public:
  TangentForm(const QuadricForm& q, const Vec4& base);
  const Vec4& coeffs() const { return c_; }
  const Vec4& base() const { return base_; }
  Int evaluate(const Vec4& y) const;
  Int evaluate_mod(const Vec4& y, Int m) const;

 private:
  Vec4 c_;
  Vec4 base_;
};

TangentForm tangent_form(const ConePoint& p, const QuadricForm& q);

// A projective F_p-point of the quadric, stored with the canonical
// representative whose first nonzero coordinate is 1.
class ProjPointFp {
 public:
  static ProjPointFp from_tuple(const QuadricForm& q, Int p, const Vec4& raw);
  const Vec4& coords() const { return x_; }
  Int prime() const { return p_; }

  friend bool operator==(const ProjPointFp& a, const ProjPointFp& b) {
    return a.p_ == b.p_ && a.x_ == b.x_;
  }
  friend bool operator<(const ProjPointFp& a, const ProjPointFp& b) { return a.x_ < b.x_; }

 private:
  ProjPointFp(Int p, const Vec4& x) : p_(p), x_(x) {}
  Int p_;
  Vec4 x_;
};

// A primitive solution mod p^k: one coordinate must be a unit mod p.
class PadicPoint {
 public:
  PadicPoint(const QuadricForm& q, Int p, int precision, const Vec4& coords);
  Int prime() const { return p_; }
  int precision() const { return k_; }
  Int modulus() const { return pk_; }
  const Vec4& coords() const { return x_; }
  Vec4 reduction_mod_p() const;

 private:
  Int p_;
  int k_;
  Int pk_;
  Vec4 x_;
};

// #Y(F_p) by the trace formula: p^2 + 2p + 1 when the discriminant is a
// square mod p, else p^2 + 1. Requires p odd and p not dividing det M.
Int count_points_formula(const QuadricForm& q, Int p);

// All projective F_p-points of {f = 0}, each class once, in increasing
// canonical-representative order. Full scan of p^4 tuples.
std::vector<ProjPointFp> enumerate_points_fp(const QuadricForm& q, Int p);

bool is_smooth_mod_p(const ProjPointFp& pt, const QuadricForm& q);
// Same test on a raw residue tuple (need not be normalized or on the cone).
bool is_smooth_tuple_mod_p(const QuadricForm& q, Int p, const Vec4& raw);

// All F_p-points of {f = 0, l_P = 0}: the tangent-plane section through the
// reduction of P. Requires p not dividing 2 det M.
std::vector<ProjPointFp> tangent_section_points(const ConePoint& p0, const QuadricForm& q, Int p);

// Newton lift of a smooth F_p-point to a solution mod p^k, adjusting the
// first coordinate whose gradient entry is a unit. p odd.
PadicPoint hensel_lift(const ProjPointFp& pt, const QuadricForm& q, int precision);
// Lift of an exact (non-normalized) residue tuple; same iteration.
PadicPoint hensel_lift_tuple(const QuadricForm& q, Int p, const Vec4& raw, int precision);

// Congruent integer diagonal form over Q plus the rational change of basis B
// with B^T M B = D; entries of D are squarefree.
std::pair<QuadricForm, RationalMat4> diagonalize(const QuadricForm& q);

// An element c0 + c1*t of F_p[t]/(t^2 - n).
struct Fp2 {
  Int c0 = 0;
  Int c1 = 0;
  friend bool operator==(const Fp2& a, const Fp2& b) = default;
  friend bool operator<(const Fp2& a, const Fp2& b) {
    return a.c0 != b.c0 ? a.c0 < b.c0 : a.c1 < b.c1;
  }
};

// F_{p^2} realized as F_p[t]/(t^2 - n) for the least positive nonresidue n.
class QuadExtField {
 public:
  explicit QuadExtField(Int p);
  Int p() const { return p_; }
  Int nonresidue() const { return n_; }

  Fp2 make(Int c0, Int c1 = 0) const { return {mod_floor(c0, p_), mod_floor(c1, p_)}; }
  Fp2 add(const Fp2& a, const Fp2& b) const;
  Fp2 sub(const Fp2& a, const Fp2& b) const;
  Fp2 mul(const Fp2& a, const Fp2& b) const;
  Fp2 neg(const Fp2& a) const;
  bool is_zero(const Fp2& a) const { return a.c0 == 0 && a.c1 == 0; }
  // Both square roots of a base-field element, if it is a square in F_{p^2}.
  std::vector<Fp2> sqrts_of(Int a) const;

 private:
  Int p_;
  Int n_;
};

// F_p-points (a,b,c,d) of the affine piece of the Fano scheme of lines of a
// diagonal form diag(p0,q0,r0,s0): the locus p0 + r0 a^2 + s0 b^2 = 0,
// r0 a c + s0 b d = 0, q0 + r0 c^2 + s0 d^2 = 0. Empty over F_p whenever the
// discriminant is a nonsquare mod p.
std::vector<std::array<Int, 4>> fano_affine_piece_fp(const QuadricForm& q, Int p);
// The same locus over F_{p^2}.
std::vector<std::array<Fp2, 4>> fano_affine_piece_fp2(const QuadricForm& q, Int p);

// Which of the two conjugate planes a Fano point lies on, as the sign of the
// square root of the discriminant for which q0*r0*a = -sqrt(D) d and
// q0*s0*b = sqrt(D) c hold (this exact shape is verified by the test suite).
// Returns +1 or -1; throws if the point satisfies neither or both conditions.
int fano_plane_side(const QuadricForm& q, const QuadExtField& field, const std::array<Fp2, 4>& pt);

// Plain-text form config: either "diag = [a0, a1, a2, a3]" or
// "matrix = [[..4 rows of 4..]]".
QuadricForm parse_quadric_config(std::istream& in);
QuadricForm parse_quadric_config(const std::string& text);
// Comma-separated integer 4-tuple, e.g. "35,3,4,0".
Vec4 parse_point(const std::string& csv);

}  // namespace conebm
