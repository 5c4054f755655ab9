#include "conebm/brauer.hpp"

#include <algorithm>
#include <set>

namespace conebm {

namespace {

// Canonical projective representative of a nonzero residue tuple mod p.
Vec4 normalize_mod_p(const Vec4& raw, Int p) {
  Vec4 x{};
  for (int i = 0; i < 4; ++i) x[i] = mod_floor(raw[i], p);
  int lead = 0;
  while (lead < 4 && x[lead] == 0) ++lead;
  if (lead == 4) throw std::invalid_argument("normalize_mod_p: zero tuple");
  Int s = mod_inverse(x[lead], p);
  for (int i = 0; i < 4; ++i) x[i] = x[i] * s % p;
  return x;
}

std::string tuple_str(const Vec4& x) {
  return "(" + int_to_string(x[0]) + "," + int_to_string(x[1]) + "," + int_to_string(x[2]) + "," +
         int_to_string(x[3]) + ")";
}

}  // namespace

BrauerClass::BrauerClass(const QuadricForm& q, const ConePoint& base, std::vector<ConePoint> pool)
    : q_(q),
      delta_(discriminant_class(q)),
      base_(base),
      tangent_(q, base.coords()),
      pool_(std::move(pool)) {
  if (delta_.is_rational_square())
    throw std::invalid_argument(
        "BrauerClass: discriminant is a rational square, the class is trivial");
  if (q_.evaluate(base_.coords()) != 0)
    throw std::invalid_argument("BrauerClass: base point is not on this cone");
  for (const auto& p : pool_) {
    if (q_.evaluate(p.coords()) != 0)
      throw std::invalid_argument("BrauerClass: pool point is not on this cone");
  }
}

BrauerClass BrauerClass::with_base(const ConePoint& new_base) const {
  std::vector<ConePoint> pool = pool_;
  pool.erase(std::remove(pool.begin(), pool.end(), new_base), pool.end());
  pool.push_back(base_);
  return BrauerClass(q_, new_base, std::move(pool));
}

LocalInvariant local_invariant(const BrauerClass& a, const ConePoint& pt, const Place& v) {
  Int lval = a.tangent().evaluate(pt.coords());
  if (lval == 0) {
    // The tangent form vanishes only along the base point's own line; any
    // pool point with a different image on the surface gives the same class.
    for (const auto& alt : a.pool()) {
      Int lalt = TangentForm(a.form(), alt.coords()).evaluate(pt.coords());
      if (lalt != 0) {
        lval = lalt;
        break;
      }
    }
    if (lval == 0)
      throw std::runtime_error(
          "local_invariant: tangent form vanishes at " + tuple_str(pt.coords()) +
          " and no alternative base point is available in the configured pool");
  }
  return invariant(a.delta().squarefree_rep(), lval, v);
}

namespace {

// Invariant of (delta, l(Q)) from a residue of l(Q) mod p^k. Empty optional
// means a full-precision zero; PrecisionError means the unit part is not
// pinned down by the remaining digits.
std::optional<LocalInvariant> invariant_from_residue(Int delta, Int lres, const PadicPoint& pt,
                                                     bool throw_on_precision) {
  const Int p = pt.prime();
  if (lres == 0) return std::nullopt;
  int e = padic_valuation(lres, p);
  // One digit of unit part plus one guard digit; mod 2 the unit part must be
  // known mod 8.
  int margin = p == 2 ? 3 : 2;
  if (e > pt.precision() - margin) {
    if (throw_on_precision)
      throw PrecisionError("local_invariant: tangent value has valuation " + std::to_string(e) +
                           " at precision " + std::to_string(pt.precision()) +
                           "; raise the precision or supply an exact point");
    return std::nullopt;
  }
  return invariant(delta, lres, Place::finite(p));
}

}  // namespace

LocalInvariant local_invariant(const BrauerClass& a, const PadicPoint& pt, const Place& v) {
  if (!v.is_finite() || v.prime() != pt.prime())
    throw std::invalid_argument("local_invariant: place must be the finite place " +
                                int_to_string(pt.prime()) + " of the point's residue ring");
  const Int delta = a.delta().squarefree_rep();
  // Where delta is a local square the class is locally trivial and every
  // evaluation has invariant 0.
  if (is_square_local(delta, v)) return LocalInvariant::zero();

  const Int p = pt.prime();
  Int lres = a.tangent().evaluate_mod(pt.coords(), pt.modulus());
  if (lres != 0) return *invariant_from_residue(delta, lres, pt, /*throw_on_precision=*/true);

  // Full-precision zero: switch to a pool point over a different point of
  // the surface mod p.
  Vec4 qproj = normalize_mod_p(pt.reduction_mod_p(), p);
  for (const auto& alt : a.pool()) {
    if (normalize_mod_p(alt.coords(), p) == qproj) continue;
    Int lalt = TangentForm(a.form(), alt.coords()).evaluate_mod(pt.coords(), pt.modulus());
    auto inv = invariant_from_residue(delta, lalt, pt, /*throw_on_precision=*/false);
    if (inv) return *inv;
  }
  throw std::runtime_error(
      "local_invariant: tangent form vanishes to full precision at " + tuple_str(pt.coords()) +
      " mod " + int_to_string(pt.modulus()) +
      " and no alternative base point is available in the configured pool");
}

std::map<Place, LocalInvariant> invariant_profile(const BrauerClass& a, const ConePoint& pt,
                                                  Int factor_cap) {
  const Int delta = a.delta().squarefree_rep();
  Int lval = a.tangent().evaluate(pt.coords());
  if (lval == 0) {
    for (const auto& alt : a.pool()) {
      Int lalt = TangentForm(a.form(), alt.coords()).evaluate(pt.coords());
      if (lalt != 0) {
        lval = lalt;
        break;
      }
    }
    if (lval == 0)
      throw std::runtime_error("invariant_profile: tangent form vanishes at " +
                               tuple_str(pt.coords()) + " and the pool has no alternative");
  }

  std::set<Int> odd_primes;
  for (const auto& [p, e] : factorize(delta, factor_cap)) {
    if (p != 2) odd_primes.insert(p);
  }
  for (const auto& [p, e] : factorize(lval, factor_cap)) {
    if (p != 2) odd_primes.insert(p);
  }

  std::map<Place, LocalInvariant> out;
  out.emplace(Place::infinity(), invariant(delta, lval, Place::infinity()));
  out.emplace(Place::finite(2), invariant(delta, lval, Place::finite(2)));
  for (Int p : odd_primes) out.emplace(Place::finite(p), invariant(delta, lval, Place::finite(p)));
  return out;
}

OrbitReport scalar_orbit_classification(const BrauerClass& a, const Vec4& tuple, Int p,
                                        int precision) {
  if (!is_prime(p) || p == 2)
    throw std::invalid_argument("scalar_orbit_classification: p must be an odd prime");
  Vec4 base{};
  for (int i = 0; i < 4; ++i) base[i] = mod_floor(tuple[i], p);
  if (base == Vec4{0, 0, 0, 0})
    throw std::invalid_argument("scalar_orbit_classification: zero tuple");
  if (a.form().evaluate_mod(base, p) != 0)
    throw std::invalid_argument("scalar_orbit_classification: tuple is not on the cone mod " +
                                int_to_string(p));
  if (!is_smooth_tuple_mod_p(a.form(), p, base))
    throw std::invalid_argument("scalar_orbit_classification: singular point " + tuple_str(base));

  PadicPoint lift = hensel_lift_tuple(a.form(), p, base, precision);
  LocalInvariant inv1 = LocalInvariant::zero();
  bool have = false;
  try {
    inv1 = local_invariant(a, lift, Place::finite(p));
    have = true;
  } catch (const PrecisionError&) {
    // The lift landed too close to the tangent hyperplane of this base
    // point; any pool point over a different surface point decides instead.
    Vec4 qproj = normalize_mod_p(base, p);
    for (const auto& alt : a.pool()) {
      if (normalize_mod_p(alt.coords(), p) == qproj) continue;
      inv1 = local_invariant(a.with_base(alt), lift, Place::finite(p));
      have = true;
      break;
    }
    if (!have) throw;
  }

  OrbitReport report;
  report.base = base;
  report.prime = p;
  const Int delta = a.delta().squarefree_rep();
  for (Int lam = 1; lam < p; ++lam) {
    LocalInvariant val = inv1 + invariant(delta, lam, Place::finite(p));
    report.table.emplace(lam, val);
    if (val.is_zero())
      ++report.zero_count;
    else
      ++report.half_count;
  }
  return report;
}

bool certify_nonliftable(const BrauerClass& a, const Vec4& tuple, Int p, int precision) {
  OrbitReport report = scalar_orbit_classification(a, tuple, p, precision);
  return report.table.at(1).is_half();
}

bool verify_base_point_independence(const QuadricForm& q, const ConePoint& p1, const ConePoint& p2,
                                    const std::vector<LocalSample>& samples,
                                    std::vector<ConePoint> extra_pool) {
  std::vector<ConePoint> pool1 = extra_pool;
  pool1.push_back(p2);
  std::vector<ConePoint> pool2 = std::move(extra_pool);
  pool2.push_back(p1);
  BrauerClass a1(q, p1, std::move(pool1));
  BrauerClass a2(q, p2, std::move(pool2));

  for (const auto& s : samples) {
    LocalInvariant v1 = std::holds_alternative<ConePoint>(s.point)
                            ? local_invariant(a1, std::get<ConePoint>(s.point), s.place)
                            : local_invariant(a1, std::get<PadicPoint>(s.point), s.place);
    LocalInvariant v2 = std::holds_alternative<ConePoint>(s.point)
                            ? local_invariant(a2, std::get<ConePoint>(s.point), s.place)
                            : local_invariant(a2, std::get<PadicPoint>(s.point), s.place);
    if (!(v1 == v2)) return false;
  }
  return true;
}

}  // namespace conebm
