// The quaternion class attached to a tangent form on the punctured cone, its
// local invariants at all places (including finite-precision p-adic points),
// base-point independence, scalar-orbit classification, and nonliftability
// certificates.
#pragma once

#include "conebm/quadric.hpp"

#include <map>
#include <variant>

namespace conebm {

// A finite-precision invariant query needs a couple of spare p-adic digits;
// this is raised when the tangent value's valuation eats into them.
class PrecisionError : public std::runtime_error {
 public:
  explicit PrecisionError(const std::string& what) : std::runtime_error(what) {}
};

// The order-2 class (delta, l_P) in Br X, carried by a base point P on the
// cone together with a pool of alternative base points used when l_P
// degenerates at a query point. Construction refuses square discriminants,
// for which the class would be trivial.
class BrauerClass {
 public:
  BrauerClass(const QuadricForm& q, const ConePoint& base, std::vector<ConePoint> pool = {});

  const QuadricForm& form() const { return q_; }
  const Discriminant& delta() const { return delta_; }
  const ConePoint& base_point() const { return base_; }
  const TangentForm& tangent() const { return tangent_; }
  const std::vector<ConePoint>& pool() const { return pool_; }

  // The same class carried by a pool point (for switching and independence
  // checks); the previous base joins the new pool.
  BrauerClass with_base(const ConePoint& new_base) const;

 private:
  QuadricForm q_;
  Discriminant delta_;
  ConePoint base_;
  TangentForm tangent_;
  std::vector<ConePoint> pool_;
};

// inv_v of the class evaluated at an exact integral point. A vanishing
// tangent value switches to the first pool point whose tangent form does not
// vanish at the query.
LocalInvariant local_invariant(const BrauerClass& a, const ConePoint& pt, const Place& v);

// inv_p at a finite-precision point; v must be the finite place of the
// point's residue ring. Well-defined when the tangent value keeps two digits
// of unit part below the precision; a full-precision zero switches base
// points, anything in between raises PrecisionError.
LocalInvariant local_invariant(const BrauerClass& a, const PadicPoint& pt, const Place& v);

// Invariants of an exact point at the real place, 2, and every odd prime
// dividing delta or the tangent value; all other places pair two units. The
// values sum to 0 in Q/Z.
std::map<Place, LocalInvariant> invariant_profile(const BrauerClass& a, const ConePoint& pt,
                                                  Int factor_cap = Int(100'000'000));

// Classification of the scalar multiples of a residue tuple mod p: the
// invariant of any Z_p-lift of lambda * base, for every lambda in F_p^*.
struct OrbitReport {
  Vec4 base{};
  Int prime = 0;
  std::map<Int, LocalInvariant> table;
  int zero_count = 0;
  int half_count = 0;
};

// One Hensel lift decides the lambda = 1 entry; the scalar law
// table(lambda) = table(1) + inv_p(delta, lambda) fills the rest.
OrbitReport scalar_orbit_classification(const BrauerClass& a, const Vec4& tuple, Int p = 17,
                                        int precision = 8);

// True iff lifts of the tuple carry invariant 1/2, in which case no coprime
// integral point reduces to exactly this tuple mod p.
bool certify_nonliftable(const BrauerClass& a, const Vec4& tuple, Int p = 17, int precision = 8);

// A local point paired with the place at which it is sampled.
struct LocalSample {
  std::variant<ConePoint, PadicPoint> point;
  Place place;

  static LocalSample exact(const ConePoint& pt, const Place& v) { return {pt, v}; }
  static LocalSample padic(const PadicPoint& pt) {
    return {pt, Place::finite(pt.prime())};
  }
};

// Checks that the classes carried by two base points assign equal invariants
// at every sample. Extra pool points serve as third bases where both tangent
// forms vanish.
bool verify_base_point_independence(const QuadricForm& q, const ConePoint& p1, const ConePoint& p2,
                                    const std::vector<LocalSample>& samples,
                                    std::vector<ConePoint> extra_pool = {});

}  // namespace conebm
