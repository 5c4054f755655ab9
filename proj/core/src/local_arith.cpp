#include "conebm/local_arith.hpp"

namespace conebm {

Place Place::finite(Int p) {
  if (!is_prime(p)) throw std::invalid_argument("Place::finite: " + int_to_string(p) + " is not prime");
  return Place(false, p);
}

Int Place::prime() const {
  if (infinite_) throw std::logic_error("Place::prime at the archimedean place");
  return p_;
}

LocalInvariant LocalInvariant::from_symbol(int s) {
  if (s != 1 && s != -1) throw std::invalid_argument("from_symbol: symbol must be +1 or -1");
  return LocalInvariant(s == -1);
}

int legendre(Int a, Int p) {
  if (p == 2 || !is_prime(p)) throw std::invalid_argument("legendre: modulus must be an odd prime");
  Int r = mod_floor(a, p);
  if (r == 0) return 0;
  Int e = mod_pow(r, (p - 1) / 2, p);  // Euler's criterion
  return e == 1 ? 1 : -1;
}

int padic_valuation(Int n, Int p) {
  if (n == 0) throw std::invalid_argument("padic_valuation: valuation of 0 is infinite");
  if (!is_prime(p)) throw std::invalid_argument("padic_valuation: modulus must be prime");
  int e = 0;
  while (n % p == 0) {
    n /= p;
    ++e;
  }
  return e;
}

bool is_square_local(Int num, Int den, const Place& v) {
  if (num == 0 || den == 0) throw std::invalid_argument("is_square_local: argument must be nonzero");
  // num/den and num*den lie in the same square class.
  Int a = checked_mul(num, den);
  if (v.is_infinite()) return a > 0;
  Int p = v.prime();
  int e = padic_valuation(a, p);
  if (e % 2 != 0) return false;
  Int u = a;
  for (int i = 0; i < e; ++i) u /= p;
  if (p == 2) return mod_floor(u, 8) == 1;
  return legendre(u, p) == 1;
}

namespace {

// (u-1)/2 mod 2 and (u^2-1)/8 mod 2 for odd u, the standard 2-adic characters.
int eps2(Int u) { return static_cast<int>(mod_floor((u - 1) / 2, 2)); }
int omega2(Int u) { return static_cast<int>(mod_floor((checked_mul(u, u) - 1) / 8, 2)); }

}  // namespace

int hilbert_symbol(Int a, Int b, const Place& v) {
  if (a == 0 || b == 0) throw std::invalid_argument("hilbert_symbol: arguments must be nonzero");
  if (v.is_infinite()) return (a < 0 && b < 0) ? -1 : 1;

  Int p = v.prime();
  int alpha = padic_valuation(a, p);
  int beta = padic_valuation(b, p);
  Int u = a, w = b;
  for (int i = 0; i < alpha; ++i) u /= p;
  for (int i = 0; i < beta; ++i) w /= p;

  if (p == 2) {
    int exp = eps2(u) * eps2(w) + alpha * omega2(w) + beta * omega2(u);
    return exp % 2 == 0 ? 1 : -1;
  }

  int exp = (alpha % 2) * (beta % 2) * static_cast<int>(mod_floor((p - 1) / 2, 2));
  int s = exp == 0 ? 1 : -1;
  if (beta % 2 == 1) s *= legendre(u, p);
  if (alpha % 2 == 1) s *= legendre(w, p);
  return s;
}

LocalInvariant invariant(Int a, Int b, const Place& v) {
  return LocalInvariant::from_symbol(hilbert_symbol(a, b, v));
}

}  // namespace conebm
