// 128-bit exact integer arithmetic: checked operations, modular helpers,
// integer square roots, trial-division primality and factorization.
#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace conebm {

// All quantities in the library are signed 128-bit integers. Operations that
// would leave that range throw instead of wrapping.
using Int = __int128;

// Thrown when a checked operation would exceed 127-bit magnitudes.
class OverflowError : public std::overflow_error {
 public:
  explicit OverflowError(const std::string& what) : std::overflow_error(what) {}
};

Int checked_add(Int a, Int b);
Int checked_sub(Int a, Int b);
Int checked_mul(Int a, Int b);
Int checked_pow(Int base, unsigned exp);

inline Int abs_int(Int a) { return a < 0 ? -a : a; }
Int gcd_int(Int a, Int b);

std::string int_to_string(Int v);
Int parse_int(std::string_view s);

// floor(sqrt(n)) for n >= 0.
Int isqrt_floor(Int n);
bool is_perfect_square(Int n, Int* root = nullptr);

// Representative of a mod m in [0, m); m > 0.
Int mod_floor(Int a, Int m);
Int mod_pow(Int base, Int exp, Int m);
// Inverse of a mod m for gcd(a, m) = 1.
Int mod_inverse(Int a, Int m);

// Deterministic trial-division primality; intended for desk-scale inputs.
bool is_prime(Int n);

inline constexpr Int kDefaultFactorCap = 1'000'000;

// Prime factorization of |n| by trial division, as (prime, exponent) pairs in
// increasing prime order. Throws std::invalid_argument for n = 0 and
// OverflowError when |n| exceeds the cap.
std::vector<std::pair<Int, int>> factorize(Int n, Int cap = kDefaultFactorCap);

// Squarefree integer in the same rational square class as n (sign preserved).
Int squarefree_core(Int n, Int cap = kDefaultFactorCap);

// Exact rational number, always stored reduced with positive denominator.
struct Rational {
  Int num = 0;
  Int den = 1;

  Rational() = default;
  Rational(Int n, Int d);
  Rational(Int n) : num(n), den(1) {}  // NOLINT(google-explicit-constructor)

  bool is_zero() const { return num == 0; }
  std::string str() const;

  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  friend Rational operator/(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a) { return {-a.num, a.den}; }
  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num == b.num && a.den == b.den;
  }
};

}  // namespace conebm
