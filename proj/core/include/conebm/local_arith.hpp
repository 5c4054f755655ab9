// Exact local arithmetic over Q: quadratic residues, p-adic valuations,
// squareness in Q_v, and Hilbert symbols at every place.
#pragma once

#include "conebm/int128.hpp"

namespace conebm {

// A place of Q: the archimedean place or a finite prime p.
class Place {
 public:
  static Place infinity() { return Place(true, 0); }
  static Place finite(Int p);

  bool is_infinite() const { return infinite_; }
  bool is_finite() const { return !infinite_; }
  Int prime() const;

  // Archimedean place sorts first, finite places by prime.
  friend bool operator<(const Place& a, const Place& b) {
    if (a.infinite_ != b.infinite_) return a.infinite_;
    return a.p_ < b.p_;
  }
  friend bool operator==(const Place& a, const Place& b) {
    return a.infinite_ == b.infinite_ && a.p_ == b.p_;
  }

  std::string str() const { return infinite_ ? "inf" : int_to_string(p_); }

 private:
  Place(bool infinite, Int p) : infinite_(infinite), p_(p) {}
  bool infinite_;
  Int p_;
};

// An element of the two-element group {0, 1/2} in Q/Z; the value of a
// quaternionic local invariant.
class LocalInvariant {
 public:
  static LocalInvariant zero() { return LocalInvariant(false); }
  static LocalInvariant half() { return LocalInvariant(true); }
  // +1 -> 0, -1 -> 1/2.
  static LocalInvariant from_symbol(int s);

  bool is_zero() const { return !half_; }
  bool is_half() const { return half_; }

  friend LocalInvariant operator+(LocalInvariant a, LocalInvariant b) {
    return LocalInvariant(a.half_ != b.half_);
  }
  friend bool operator==(LocalInvariant a, LocalInvariant b) { return a.half_ == b.half_; }

  std::string str() const { return half_ ? "1/2" : "0"; }

 private:
  explicit LocalInvariant(bool half) : half_(half) {}
  bool half_ = false;
};

// Legendre symbol (a | p) for an odd prime p: 0 if p | a, +1 for nonzero
// squares mod p, -1 otherwise.
int legendre(Int a, Int p);

// Largest e with p^e | n; throws for n = 0 (infinite valuation).
int padic_valuation(Int n, Int p);

// Whether the nonzero rational num/den is a square in Q_v. At the real place
// this is positivity; at odd p, even valuation with quadratic-residue unit
// part; at 2, even valuation with unit part congruent to 1 mod 8.
bool is_square_local(Int num, Int den, const Place& v);
inline bool is_square_local(Int a, const Place& v) { return is_square_local(a, 1, v); }

// Hilbert symbol (a, b)_v: +1 iff z^2 = a x^2 + b y^2 has a nontrivial
// solution over Q_v. Symmetric and bimultiplicative.
int hilbert_symbol(Int a, Int b, const Place& v);

// Local invariant of the quaternion algebra (a, b) at v: 0 if the symbol is
// +1, else 1/2.
LocalInvariant invariant(Int a, Int b, const Place& v);

}  // namespace conebm
