#include "conebm/quadric.hpp"

#include <algorithm>
#include <cctype>
#include <istream>
#include <sstream>

namespace conebm {

namespace {

Int det3(Int a, Int b, Int c, Int d, Int e, Int f, Int g, Int h, Int i) {
  Int t1 = checked_mul(a, checked_sub(checked_mul(e, i), checked_mul(f, h)));
  Int t2 = checked_mul(b, checked_sub(checked_mul(d, i), checked_mul(f, g)));
  Int t3 = checked_mul(c, checked_sub(checked_mul(d, h), checked_mul(e, g)));
  return checked_add(checked_sub(t1, t2), t3);
}

// Cofactor expansion along the first row.
Int det4(const Mat4& m) {
  Int d = 0;
  auto minor_det = [&](int col) {
    Int sub[3][3];
    for (int r = 1; r < 4; ++r) {
      int cc = 0;
      for (int c = 0; c < 4; ++c) {
        if (c == col) continue;
        sub[r - 1][cc++] = m[r][c];
      }
    }
    return det3(sub[0][0], sub[0][1], sub[0][2], sub[1][0], sub[1][1], sub[1][2], sub[2][0],
                sub[2][1], sub[2][2]);
  };
  for (int j = 0; j < 4; ++j) {
    Int term = checked_mul(m[0][j], minor_det(j));
    d = (j % 2 == 0) ? checked_add(d, term) : checked_sub(d, term);
  }
  return d;
}

}  // namespace

QuadricForm::QuadricForm(const Mat4& m) : m_(m) {
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) {
      if (m_[i][j] != m_[j][i]) throw std::invalid_argument("QuadricForm: matrix must be symmetric");
    }
  }
  det_ = det4(m_);
  if (det_ == 0) throw std::invalid_argument("QuadricForm: degenerate form (det = 0)");
  diagonal_ = true;
  for (int i = 0; i < 4 && diagonal_; ++i) {
    for (int j = 0; j < 4; ++j) {
      if (i != j && m_[i][j] != 0) diagonal_ = false;
    }
  }
}

QuadricForm QuadricForm::diagonal(const Vec4& entries) {
  Mat4 m{};
  for (int i = 0; i < 4; ++i) m[i][i] = entries[i];
  return QuadricForm(m);
}

QuadricForm QuadricForm::default_instance() {
  return diagonal({1, 47, -103, -Int(17) * 47 * 103});
}

Int QuadricForm::evaluate(const Vec4& x) const {
  Int acc = 0;
  for (int i = 0; i < 4; ++i) {
    acc = checked_add(acc, checked_mul(m_[i][i], checked_mul(x[i], x[i])));
    for (int j = i + 1; j < 4; ++j) {
      acc = checked_add(acc, checked_mul(2, checked_mul(m_[i][j], checked_mul(x[i], x[j]))));
    }
  }
  return acc;
}

Int QuadricForm::evaluate_mod(const Vec4& x, Int m) const {
  Int acc = 0;
  for (int i = 0; i < 4; ++i) {
    Int xi = mod_floor(x[i], m);
    acc = (acc + mod_floor(m_[i][i], m) * xi % m * xi) % m;
    for (int j = i + 1; j < 4; ++j) {
      Int xj = mod_floor(x[j], m);
      acc = (acc + 2 * mod_floor(m_[i][j], m) % m * xi % m * xj) % m;
    }
  }
  return acc;
}

Vec4 QuadricForm::apply_matrix(const Vec4& x) const {
  Vec4 out{};
  for (int i = 0; i < 4; ++i) {
    Int acc = 0;
    for (int j = 0; j < 4; ++j) acc = checked_add(acc, checked_mul(m_[i][j], x[j]));
    out[i] = acc;
  }
  return out;
}

Vec4 QuadricForm::apply_matrix_mod(const Vec4& x, Int m) const {
  Vec4 out{};
  for (int i = 0; i < 4; ++i) {
    Int acc = 0;
    for (int j = 0; j < 4; ++j) acc = (acc + mod_floor(m_[i][j], m) * mod_floor(x[j], m)) % m;
    out[i] = acc;
  }
  return out;
}

Vec4 QuadricForm::diagonal_entries() const {
  if (!diagonal_) throw std::logic_error("diagonal_entries of a non-diagonal form");
  return {m_[0][0], m_[1][1], m_[2][2], m_[3][3]};
}

Int QuadricForm::max_abs_coeff() const {
  Int mx = 0;
  for (const auto& row : m_) {
    for (Int v : row) mx = std::max(mx, abs_int(v));
  }
  return mx;
}

Discriminant::Discriminant(Int squarefree_rep) : rep_(squarefree_rep) {
  if (rep_ == 0) throw std::invalid_argument("Discriminant: representative must be nonzero");
}

Discriminant discriminant_class(const QuadricForm& q, Int factor_cap) {
  return Discriminant(squarefree_core(q.determinant(), factor_cap));
}

ConePoint::ConePoint(const QuadricForm& q, const Vec4& coords) : x_(coords) {
  if (x_ == Vec4{0, 0, 0, 0}) throw std::invalid_argument("ConePoint: zero tuple is excluded");
  Int g = 0;
  for (Int c : x_) g = gcd_int(g, c);
  if (g != 1)
    throw std::invalid_argument("ConePoint: coordinates not coprime (gcd " + int_to_string(g) + ")");
  if (q.evaluate(x_) != 0) throw std::invalid_argument("ConePoint: point is not on the cone");
}

bool ConePoint::same_projective_point(const ConePoint& other) const {
  Vec4 neg{-other.x_[0], -other.x_[1], -other.x_[2], -other.x_[3]};
  return x_ == other.x_ || x_ == neg;
}

TangentForm::TangentForm(const QuadricForm& q, const Vec4& base)
    : c_(q.apply_matrix(base)), base_(base) {}

Int TangentForm::evaluate(const Vec4& y) const {
  Int acc = 0;
  for (int i = 0; i < 4; ++i) acc = checked_add(acc, checked_mul(c_[i], y[i]));
  return acc;
}

Int TangentForm::evaluate_mod(const Vec4& y, Int m) const {
  Int acc = 0;
  for (int i = 0; i < 4; ++i) acc = (acc + mod_floor(c_[i], m) * mod_floor(y[i], m)) % m;
  return acc;
}

TangentForm tangent_form(const ConePoint& p, const QuadricForm& q) {
  return TangentForm(q, p.coords());
}

ProjPointFp ProjPointFp::from_tuple(const QuadricForm& q, Int p, const Vec4& raw) {
  if (!is_prime(p)) throw std::invalid_argument("ProjPointFp: modulus must be prime");
  Vec4 x{};
  for (int i = 0; i < 4; ++i) x[i] = mod_floor(raw[i], p);
  if (x == Vec4{0, 0, 0, 0}) throw std::invalid_argument("ProjPointFp: zero tuple");
  if (q.evaluate_mod(x, p) != 0)
    throw std::invalid_argument("ProjPointFp: point is not on the quadric mod p");
  int lead = 0;
  while (x[lead] == 0) ++lead;
  Int s = mod_inverse(x[lead], p);
  for (int i = 0; i < 4; ++i) x[i] = x[i] * s % p;
  return ProjPointFp(p, x);
}

PadicPoint::PadicPoint(const QuadricForm& q, Int p, int precision, const Vec4& coords)
    : p_(p), k_(precision) {
  if (!is_prime(p)) throw std::invalid_argument("PadicPoint: modulus must be prime");
  if (k_ < 1) throw std::invalid_argument("PadicPoint: precision must be >= 1");
  pk_ = checked_pow(p, static_cast<unsigned>(k_));
  for (int i = 0; i < 4; ++i) x_[i] = mod_floor(coords[i], pk_);
  bool unit = false;
  for (Int c : x_) unit = unit || c % p != 0;
  if (!unit) throw std::invalid_argument("PadicPoint: tuple is not primitive (no unit coordinate)");
  if (q.evaluate_mod(x_, pk_) != 0)
    throw std::invalid_argument("PadicPoint: f != 0 mod p^" + std::to_string(k_));
}

Vec4 PadicPoint::reduction_mod_p() const {
  return {x_[0] % p_, x_[1] % p_, x_[2] % p_, x_[3] % p_};
}

Int count_points_formula(const QuadricForm& q, Int p) {
  if (!is_prime(p) || p == 2)
    throw std::invalid_argument("count_points_formula: p must be an odd prime");
  if (q.determinant() % p == 0)
    throw std::invalid_argument("count_points_formula: singular reduction (p | det)");
  int chi = legendre(q.determinant(), p);
  return chi == 1 ? p * p + 2 * p + 1 : p * p + 1;
}

std::vector<ProjPointFp> enumerate_points_fp(const QuadricForm& q, Int p) {
  if (p == 2) throw std::invalid_argument("enumerate_points_fp: characteristic 2 is excluded");
  if (!is_prime(p)) throw std::invalid_argument("enumerate_points_fp: p must be prime");

  // Residues of the matrix once, so the inner loop is pure residue math.
  Mat4 mm{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) mm[i][j] = mod_floor(q.matrix()[i][j], p);

  std::vector<ProjPointFp> out;
  Vec4 x{};
  // Full scan of p^4 tuples; a class is kept at its canonical representative,
  // the one whose first nonzero coordinate is 1.
  for (x[0] = 0; x[0] < p; ++x[0]) {
    for (x[1] = 0; x[1] < p; ++x[1]) {
      for (x[2] = 0; x[2] < p; ++x[2]) {
        for (x[3] = 0; x[3] < p; ++x[3]) {
          Int lead = x[0] != 0 ? x[0] : x[1] != 0 ? x[1] : x[2] != 0 ? x[2] : x[3];
          if (lead != 1) continue;
          Int acc = 0;
          for (int i = 0; i < 4; ++i) {
            acc = (acc + mm[i][i] * x[i] % p * x[i]) % p;
            for (int j = i + 1; j < 4; ++j) acc = (acc + 2 * mm[i][j] * x[i] % p * x[j]) % p;
          }
          if (acc == 0) out.push_back(ProjPointFp::from_tuple(q, p, x));
        }
      }
    }
  }
  return out;
}

bool is_smooth_tuple_mod_p(const QuadricForm& q, Int p, const Vec4& raw) {
  if (p == 2) throw std::invalid_argument("is_smooth_tuple_mod_p: characteristic 2 is excluded");
  Vec4 g = q.apply_matrix_mod(raw, p);  // gradient is 2 M x and 2 is a unit
  return g != Vec4{0, 0, 0, 0};
}

bool is_smooth_mod_p(const ProjPointFp& pt, const QuadricForm& q) {
  return is_smooth_tuple_mod_p(q, pt.prime(), pt.coords());
}

std::vector<ProjPointFp> tangent_section_points(const ConePoint& p0, const QuadricForm& q, Int p) {
  if (!is_prime(p) || p == 2)
    throw std::invalid_argument("tangent_section_points: p must be an odd prime");
  if (q.determinant() % p == 0)
    throw std::invalid_argument("tangent_section_points: singular reduction (p | det)");
  TangentForm l = tangent_form(p0, q);
  std::vector<ProjPointFp> out;
  for (const auto& pt : enumerate_points_fp(q, p)) {
    if (l.evaluate_mod(pt.coords(), p) == 0) out.push_back(pt);
  }
  return out;
}

PadicPoint hensel_lift_tuple(const QuadricForm& q, Int p, const Vec4& raw, int precision) {
  if (!is_prime(p) || p == 2) throw std::invalid_argument("hensel_lift: p must be an odd prime");
  if (precision < 1) throw std::invalid_argument("hensel_lift: precision must be >= 1");
  Vec4 x{};
  for (int i = 0; i < 4; ++i) x[i] = mod_floor(raw[i], p);
  if (q.evaluate_mod(x, p) != 0)
    throw std::invalid_argument("hensel_lift: tuple is not on the cone mod p");

  Vec4 grad = q.apply_matrix_mod(x, p);
  int pivot = -1;
  for (int i = 0; i < 4 && pivot < 0; ++i) {
    if (grad[i] % p != 0) pivot = i;
  }
  if (pivot < 0)
    throw std::invalid_argument("hensel_lift: singular point (no unit gradient entry)");

  // Newton steps on the pivot coordinate; the gradient entry mod p is fixed
  // along the lift, so its inverse is computed once.
  Int inv2g = mod_inverse(2 * grad[pivot] % p, p);
  Int pm = p;
  for (int m = 1; m < precision; ++m) {
    Int pk1 = checked_mul(pm, p);
    Int r = q.evaluate_mod(x, pk1) / pm;  // f(x) = 0 mod p^m by induction
    Int t = mod_floor(-r % p * inv2g, p);
    x[pivot] = checked_add(x[pivot], checked_mul(t, pm));
    pm = pk1;
  }
  return PadicPoint(q, p, precision, x);
}

PadicPoint hensel_lift(const ProjPointFp& pt, const QuadricForm& q, int precision) {
  return hensel_lift_tuple(q, pt.prime(), pt.coords(), precision);
}

std::pair<QuadricForm, RationalMat4> diagonalize(const QuadricForm& q) {
  // Symmetric Gaussian elimination over Q; column operations are mirrored
  // into the basis so that B^T M B stays congruent to M throughout.
  std::array<std::array<Rational, 4>, 4> a{};
  RationalMat4 basis{};
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      a[i][j] = Rational(q.matrix()[i][j]);
      basis[i][j] = Rational(i == j ? 1 : 0);
    }
  }

  auto swap_cols = [&](int i, int j) {
    for (int r = 0; r < 4; ++r) std::swap(a[r][i], a[r][j]);
    for (int r = 0; r < 4; ++r) std::swap(a[i][r], a[j][r]);
    for (int r = 0; r < 4; ++r) std::swap(basis[r][i], basis[r][j]);
  };
  auto add_col = [&](int dst, int src, const Rational& t) {
    for (int r = 0; r < 4; ++r) a[r][dst] = a[r][dst] + t * a[r][src];
    for (int r = 0; r < 4; ++r) a[dst][r] = a[dst][r] + t * a[src][r];
    for (int r = 0; r < 4; ++r) basis[r][dst] = basis[r][dst] + t * basis[r][src];
  };
  auto scale_col = [&](int i, const Rational& s) {
    for (int r = 0; r < 4; ++r) a[r][i] = a[r][i] * s;
    for (int r = 0; r < 4; ++r) a[i][r] = a[i][r] * s;
    for (int r = 0; r < 4; ++r) basis[r][i] = basis[r][i] * s;
  };

  for (int i = 0; i < 4; ++i) {
    if (a[i][i].is_zero()) {
      int jd = -1, jo = -1;
      for (int j = i + 1; j < 4; ++j) {
        if (jd < 0 && !a[j][j].is_zero()) jd = j;
        if (jo < 0 && !a[i][j].is_zero()) jo = j;
      }
      if (jd >= 0) {
        swap_cols(i, jd);
      } else if (jo >= 0) {
        add_col(i, jo, Rational(1));  // a[i][i] becomes 2 a[i][jo] != 0
      } else {
        throw std::invalid_argument("diagonalize: degenerate form");
      }
    }
    for (int j = i + 1; j < 4; ++j) {
      if (!a[i][j].is_zero()) add_col(j, i, -(a[i][j] / a[i][i]));
    }
  }

  // Scale each basis vector so the diagonal entry becomes its squarefree core.
  Vec4 diag{};
  for (int i = 0; i < 4; ++i) {
    Rational d = a[i][i];
    Int core = squarefree_core(checked_mul(d.num, d.den), Int(1) << 50);
    // d * (den/g)^2 = core, where num*den = core * g^2.
    Int g2 = checked_mul(d.num, d.den) / core;
    Int g = isqrt_floor(abs_int(g2));
    scale_col(i, Rational(d.den, g));
    diag[i] = core;
  }
  return {QuadricForm::diagonal(diag), basis};
}

QuadExtField::QuadExtField(Int p) : p_(p) {
  if (!is_prime(p) || p == 2) throw std::invalid_argument("QuadExtField: p must be an odd prime");
  n_ = 0;
  for (Int c = 2; c < p; ++c) {
    if (legendre(c, p) == -1) {
      n_ = c;
      break;
    }
  }
  if (n_ == 0) throw std::logic_error("QuadExtField: no nonresidue found");
}

Fp2 QuadExtField::add(const Fp2& a, const Fp2& b) const {
  return {(a.c0 + b.c0) % p_, (a.c1 + b.c1) % p_};
}

Fp2 QuadExtField::sub(const Fp2& a, const Fp2& b) const {
  return {mod_floor(a.c0 - b.c0, p_), mod_floor(a.c1 - b.c1, p_)};
}

Fp2 QuadExtField::mul(const Fp2& a, const Fp2& b) const {
  return {(a.c0 * b.c0 + n_ * a.c1 % p_ * b.c1) % p_, (a.c0 * b.c1 + a.c1 * b.c0) % p_};
}

Fp2 QuadExtField::neg(const Fp2& a) const {
  return {mod_floor(-a.c0, p_), mod_floor(-a.c1, p_)};
}

std::vector<Fp2> QuadExtField::sqrts_of(Int a) const {
  Int r = mod_floor(a, p_);
  std::vector<Fp2> roots;
  if (r == 0) return {make(0)};
  if (legendre(r, p_) == 1) {
    for (Int x = 1; x < p_; ++x) {
      if (x * x % p_ == r) roots.push_back(make(x));
    }
  } else {
    // a = n y^2 for some base-field y, so sqrt(a) = +/- y t.
    Int target = r * mod_inverse(n_, p_) % p_;
    for (Int y = 1; y < p_; ++y) {
      if (y * y % p_ == target) roots.push_back(make(0, y));
    }
  }
  return roots;
}

namespace {

Vec4 fano_diag_entries(const QuadricForm& q, Int p) {
  if (!q.is_diagonal())
    throw std::invalid_argument("fano_affine_piece: form must be diagonal (diagonalize first)");
  if (!is_prime(p) || p == 2)
    throw std::invalid_argument("fano_affine_piece: characteristic must be odd");
  if (q.determinant() % p == 0)
    throw std::invalid_argument("fano_affine_piece: characteristic divides det");
  return q.diagonal_entries();
}

}  // namespace

std::vector<std::array<Int, 4>> fano_affine_piece_fp(const QuadricForm& q, Int p) {
  Vec4 e = fano_diag_entries(q, p);
  const Int p0 = mod_floor(e[0], p), q0 = mod_floor(e[1], p);
  const Int r0 = mod_floor(e[2], p), s0 = mod_floor(e[3], p);
  std::vector<std::array<Int, 4>> out;
  for (Int a = 0; a < p; ++a) {
    for (Int b = 0; b < p; ++b) {
      if ((p0 + r0 * a % p * a + s0 * b % p * b) % p != 0) continue;
      if (b != 0) {
        Int inv_sb = mod_inverse(s0 * b % p, p);
        for (Int c = 0; c < p; ++c) {
          Int d = mod_floor(-(r0 * a % p * c) % p * inv_sb, p);
          if ((q0 + r0 * c % p * c + s0 * d % p * d) % p == 0) out.push_back({a, b, c, d});
        }
      } else {
        // r0 a c = 0 with a a unit (p0 is a unit), so c = 0.
        for (Int d = 0; d < p; ++d) {
          if ((q0 + s0 * d % p * d) % p == 0) out.push_back({a, 0, 0, d});
        }
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::array<Fp2, 4>> fano_affine_piece_fp2(const QuadricForm& q, Int p) {
  Vec4 e = fano_diag_entries(q, p);
  QuadExtField f(p);
  const Fp2 p0 = f.make(e[0]), q0 = f.make(e[1]), r0 = f.make(e[2]), s0 = f.make(e[3]);

  auto inv = [&](const Fp2& z) {
    Int norm = mod_floor(z.c0 * z.c0 - f.nonresidue() * z.c1 % p * z.c1, p);
    Int ninv = mod_inverse(norm, p);
    return Fp2{z.c0 * ninv % p, mod_floor(-z.c1 * ninv, p)};
  };

  std::vector<Fp2> elems;
  for (Int c0 = 0; c0 < p; ++c0)
    for (Int c1 = 0; c1 < p; ++c1) elems.push_back({c0, c1});

  std::vector<std::array<Fp2, 4>> out;
  for (const Fp2& a : elems) {
    for (const Fp2& b : elems) {
      Fp2 e1 = f.add(f.add(p0, f.mul(r0, f.mul(a, a))), f.mul(s0, f.mul(b, b)));
      if (!f.is_zero(e1)) continue;
      if (!f.is_zero(b)) {
        Fp2 inv_sb = inv(f.mul(s0, b));
        for (const Fp2& c : elems) {
          Fp2 d = f.neg(f.mul(f.mul(r0, f.mul(a, c)), inv_sb));
          Fp2 e3 = f.add(f.add(q0, f.mul(r0, f.mul(c, c))), f.mul(s0, f.mul(d, d)));
          if (f.is_zero(e3)) out.push_back({a, b, c, d});
        }
      } else {
        for (const Fp2& d : elems) {
          Fp2 e3 = f.add(q0, f.mul(s0, f.mul(d, d)));
          if (f.is_zero(e3)) out.push_back({a, b, f.make(0), d});
        }
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

int fano_plane_side(const QuadricForm& q, const QuadExtField& field,
                    const std::array<Fp2, 4>& pt) {
  Vec4 e = fano_diag_entries(q, field.p());
  const Fp2 q0 = field.make(e[1]), r0 = field.make(e[2]), s0 = field.make(e[3]);
  auto roots = field.sqrts_of(mod_floor(q.determinant(), field.p()));
  if (roots.size() != 2) throw std::logic_error("fano_plane_side: discriminant has no square root");

  int side = 0, count = 0;
  for (size_t i = 0; i < roots.size(); ++i) {
    const Fp2& rt = roots[i];
    bool on_plane = field.mul(field.mul(q0, r0), pt[0]) == field.neg(field.mul(rt, pt[3])) &&
                    field.mul(field.mul(q0, s0), pt[1]) == field.mul(rt, pt[2]);
    if (on_plane) {
      ++count;
      side = i == 0 ? 1 : -1;
    }
  }
  if (count != 1)
    throw std::logic_error("fano_plane_side: point lies on " + std::to_string(count) +
                           " of the two conjugate planes");
  return side;
}

namespace {

// Bracketed integer-list parser for the plain-text form config.
struct ListParser {
  std::string_view s;
  size_t i = 0;

  void skip_ws() {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  }
  bool eat(char c) {
    skip_ws();
    if (i < s.size() && s[i] == c) {
      ++i;
      return true;
    }
    return false;
  }
  Int number() {
    skip_ws();
    size_t start = i;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) ++i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    if (start == i) throw std::invalid_argument("quadric config: expected integer");
    return parse_int(s.substr(start, i - start));
  }
  std::vector<Int> flat_list() {
    if (!eat('[')) throw std::invalid_argument("quadric config: expected '['");
    std::vector<Int> out;
    if (eat(']')) return out;
    out.push_back(number());
    while (eat(',')) out.push_back(number());
    if (!eat(']')) throw std::invalid_argument("quadric config: expected ']'");
    return out;
  }
  std::vector<std::vector<Int>> nested_list() {
    if (!eat('[')) throw std::invalid_argument("quadric config: expected '['");
    std::vector<std::vector<Int>> out;
    out.push_back(flat_list());
    while (eat(',')) out.push_back(flat_list());
    if (!eat(']')) throw std::invalid_argument("quadric config: expected ']'");
    return out;
  }
};

}  // namespace

QuadricForm parse_quadric_config(const std::string& text) {
  // Strip comments, then look for "diag = [...]" or "matrix = [[...], ...]".
  std::string clean;
  for (size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '#') {
      while (i < text.size() && text[i] != '\n') ++i;
      if (i < text.size()) clean.push_back('\n');
    } else {
      clean.push_back(text[i]);
    }
  }

  auto find_key = [&](const std::string& key) -> std::optional<size_t> {
    size_t pos = clean.find(key);
    while (pos != std::string::npos) {
      size_t after = pos + key.size();
      bool boundary_ok =
          (pos == 0 || !std::isalnum(static_cast<unsigned char>(clean[pos - 1]))) &&
          after < clean.size();
      if (boundary_ok) {
        size_t j = after;
        while (j < clean.size() && std::isspace(static_cast<unsigned char>(clean[j]))) ++j;
        if (j < clean.size() && clean[j] == '=') return j + 1;
      }
      pos = clean.find(key, pos + 1);
    }
    return std::nullopt;
  };

  if (auto at = find_key("diag")) {
    ListParser lp{std::string_view(clean).substr(*at)};
    auto entries = lp.flat_list();
    if (entries.size() != 4)
      throw std::invalid_argument("quadric config: diag needs exactly 4 entries");
    return QuadricForm::diagonal({entries[0], entries[1], entries[2], entries[3]});
  }
  if (auto at = find_key("matrix")) {
    ListParser lp{std::string_view(clean).substr(*at)};
    auto rows = lp.nested_list();
    if (rows.size() != 4)
      throw std::invalid_argument("quadric config: matrix needs exactly 4 rows");
    Mat4 m{};
    for (int i = 0; i < 4; ++i) {
      if (rows[i].size() != 4)
        throw std::invalid_argument("quadric config: matrix rows need exactly 4 entries");
      for (int j = 0; j < 4; ++j) m[i][j] = rows[i][j];
    }
    return QuadricForm(m);
  }
  throw std::invalid_argument("quadric config: expected 'diag = [...]' or 'matrix = [[...]]'");
}

QuadricForm parse_quadric_config(std::istream& in) {
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_quadric_config(buf.str());
}

Vec4 parse_point(const std::string& csv) {
  std::vector<Int> vals;
  std::string cur;
  for (char ch : csv) {
    if (ch == ',') {
      vals.push_back(parse_int(cur));
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  vals.push_back(parse_int(cur));
  if (vals.size() != 4) throw std::invalid_argument("point: expected 4 comma-separated integers");
  return {vals[0], vals[1], vals[2], vals[3]};
}

}  // namespace conebm
