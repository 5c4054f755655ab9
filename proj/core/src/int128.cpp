#include "conebm/int128.hpp"

#include <algorithm>
#include <cctype>

namespace conebm {

Int checked_add(Int a, Int b) {
  Int r;
  if (__builtin_add_overflow(a, b, &r)) throw OverflowError("integer addition overflow");
  return r;
}

Int checked_sub(Int a, Int b) {
  Int r;
  if (__builtin_sub_overflow(a, b, &r)) throw OverflowError("integer subtraction overflow");
  return r;
}

Int checked_mul(Int a, Int b) {
  Int r;
  if (__builtin_mul_overflow(a, b, &r)) throw OverflowError("integer multiplication overflow");
  return r;
}

Int checked_pow(Int base, unsigned exp) {
  Int r = 1;
  for (unsigned i = 0; i < exp; ++i) r = checked_mul(r, base);
  return r;
}

Int gcd_int(Int a, Int b) {
  a = abs_int(a);
  b = abs_int(b);
  while (b != 0) {
    Int t = a % b;
    a = b;
    b = t;
  }
  return a;
}

std::string int_to_string(Int v) {
  if (v == 0) return "0";
  const bool neg = v < 0;
  unsigned __int128 mag = neg ? -static_cast<unsigned __int128>(v) : static_cast<unsigned __int128>(v);
  std::string digits;
  while (mag != 0) {
    digits.push_back(static_cast<char>('0' + static_cast<int>(mag % 10)));
    mag /= 10;
  }
  if (neg) digits.push_back('-');
  std::reverse(digits.begin(), digits.end());
  return digits;
}

Int parse_int(std::string_view s) {
  size_t i = 0;
  while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  bool neg = false;
  if (i < s.size() && (s[i] == '+' || s[i] == '-')) {
    neg = s[i] == '-';
    ++i;
  }
  if (i == s.size() || !std::isdigit(static_cast<unsigned char>(s[i])))
    throw std::invalid_argument("not an integer: '" + std::string(s) + "'");
  Int v = 0;
  for (; i < s.size() && std::isdigit(static_cast<unsigned char>(s[i])); ++i) {
    v = checked_add(checked_mul(v, 10), s[i] - '0');
  }
  while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  if (i != s.size()) throw std::invalid_argument("trailing junk in integer: '" + std::string(s) + "'");
  return neg ? -v : v;
}

Int isqrt_floor(Int n) {
  if (n < 0) throw std::invalid_argument("isqrt_floor of negative number");
  if (n < 2) return n;
  // Newton iteration from a power-of-two overestimate.
  Int x = 1;
  while (x * x < n) {
    if (x > (Int(1) << 62)) break;
    x <<= 1;
  }
  Int prev = -1;
  while (x != prev) {
    prev = x;
    x = (x + n / x) / 2;
  }
  while (x * x > n) --x;
  while ((x + 1) * (x + 1) <= n) ++x;
  return x;
}

bool is_perfect_square(Int n, Int* root) {
  if (n < 0) return false;
  Int r = isqrt_floor(n);
  if (r * r != n) return false;
  if (root != nullptr) *root = r;
  return true;
}

Int mod_floor(Int a, Int m) {
  if (m <= 0) throw std::invalid_argument("mod_floor with nonpositive modulus");
  Int r = a % m;
  return r < 0 ? r + m : r;
}

Int mod_pow(Int base, Int exp, Int m) {
  if (exp < 0) throw std::invalid_argument("mod_pow with negative exponent");
  Int b = mod_floor(base, m);
  Int r = 1 % m;
  while (exp > 0) {
    if (exp & 1) r = checked_mul(r, b) % m;
    b = checked_mul(b, b) % m;
    exp >>= 1;
  }
  return r;
}

Int mod_inverse(Int a, Int m) {
  // Extended Euclid.
  Int r0 = mod_floor(a, m), r1 = m;
  Int s0 = 1, s1 = 0;
  while (r1 != 0) {
    Int q = r0 / r1;
    Int rt = r0 - q * r1;
    r0 = r1;
    r1 = rt;
    Int st = s0 - q * s1;
    s0 = s1;
    s1 = st;
  }
  if (r0 != 1) throw std::invalid_argument("mod_inverse: arguments not coprime");
  return mod_floor(s0, m);
}

bool is_prime(Int n) {
  if (n < 2) return false;
  if (n < 4) return true;
  if (n % 2 == 0) return false;
  for (Int d = 3; d * d <= n; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

std::vector<std::pair<Int, int>> factorize(Int n, Int cap) {
  if (n == 0) throw std::invalid_argument("factorize(0)");
  Int m = abs_int(n);
  if (m > cap)
    throw OverflowError("factorize: |" + int_to_string(n) + "| exceeds trial-division cap " +
                        int_to_string(cap));
  std::vector<std::pair<Int, int>> out;
  auto strip = [&](Int p) {
    int e = 0;
    while (m % p == 0) {
      m /= p;
      ++e;
    }
    if (e > 0) out.emplace_back(p, e);
  };
  strip(2);
  for (Int d = 3; d * d <= m; d += 2) strip(d);
  if (m > 1) out.emplace_back(m, 1);
  return out;
}

Int squarefree_core(Int n, Int cap) {
  Int core = n < 0 ? -1 : 1;
  for (const auto& [p, e] : factorize(n, cap)) {
    if (e % 2 == 1) core = checked_mul(core, p);
  }
  return core;
}

Rational::Rational(Int n, Int d) {
  if (d == 0) throw std::invalid_argument("Rational with zero denominator");
  if (d < 0) {
    n = -n;
    d = -d;
  }
  Int g = gcd_int(n, d);
  if (g > 1) {
    n /= g;
    d /= g;
  }
  num = n;
  den = d;
}

std::string Rational::str() const {
  if (den == 1) return int_to_string(num);
  return int_to_string(num) + "/" + int_to_string(den);
}

Rational operator+(const Rational& a, const Rational& b) {
  return {checked_add(checked_mul(a.num, b.den), checked_mul(b.num, a.den)),
          checked_mul(a.den, b.den)};
}

Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }

Rational operator*(const Rational& a, const Rational& b) {
  return {checked_mul(a.num, b.num), checked_mul(a.den, b.den)};
}

Rational operator/(const Rational& a, const Rational& b) {
  if (b.is_zero()) throw std::invalid_argument("Rational division by zero");
  return {checked_mul(a.num, b.den), checked_mul(a.den, b.num)};
}

}  // namespace conebm
