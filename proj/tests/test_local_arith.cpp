#include "conebm/local_arith.hpp"

#include "doctest.h"

#include <random>
#include <set>

using namespace conebm;

namespace {

// Independent oracle: the set of nonzero squares mod p by exhaustion.
std::set<Int> squares_mod(Int p) {
  std::set<Int> s;
  for (Int x = 1; x < p; ++x) s.insert(x * x % p);
  return s;
}

}  // namespace

TEST_CASE("legendre symbol examples") {
  CHECK(legendre(1, 17) == 1);
  CHECK(legendre(0, 5) == 0);
  // (F_17^x)^2 = {1,2,4,8,9,13,15,16}; 3 is absent.
  auto sq17 = squares_mod(17);
  CHECK(sq17 == std::set<Int>{1, 2, 4, 8, 9, 13, 15, 16});
  CHECK(legendre(3, 17) == -1);
  CHECK(legendre(-846, 17) == 1);  // -846 = 4 mod 17
}

TEST_CASE("legendre agrees with square enumeration for all odd p < 100") {
  for (Int p = 3; p < 100; ++p) {
    if (!is_prime(p)) continue;
    auto sq = squares_mod(p);
    for (Int a = 0; a < p; ++a) {
      int expected = a == 0 ? 0 : (sq.count(a) != 0 ? 1 : -1);
      CHECK(legendre(a, p) == expected);
    }
  }
}

TEST_CASE("legendre is multiplicative in the top argument") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int64_t> dist(1, 10'000);
  for (int i = 0; i < 200; ++i) {
    Int a = dist(rng), b = dist(rng);
    CHECK(legendre(a * b, 97) == legendre(a, 97) * legendre(b, 97));
  }
}

TEST_CASE("legendre rejects bad moduli") {
  CHECK_THROWS_AS(legendre(3, 2), std::invalid_argument);
  CHECK_THROWS_AS(legendre(3, 9), std::invalid_argument);
  CHECK_THROWS_AS(legendre(3, 15), std::invalid_argument);
}

TEST_CASE("padic valuation") {
  CHECK(padic_valuation(17, 17) == 1);
  CHECK(padic_valuation(17 * 47 * 103, 17) == 1);  // 82297
  CHECK(padic_valuation(56, 2) == 3);
  CHECK(padic_valuation(-272, 17) == 1);
  CHECK(padic_valuation(5, 3) == 0);
  CHECK_THROWS_AS(padic_valuation(0, 5), std::invalid_argument);
}

TEST_CASE("squareness in Q_v") {
  // 17 = 1 mod 8, and a square mod 47 and 103.
  CHECK(is_square_local(17, Place::finite(2)));
  CHECK(is_square_local(17, Place::finite(47)));
  CHECK(is_square_local(17, Place::finite(103)));
  CHECK(is_square_local(17, Place::infinity()));
  CHECK_FALSE(is_square_local(17, Place::finite(3)));
  CHECK_FALSE(is_square_local(17, Place::finite(5)));
  CHECK_FALSE(is_square_local(17, Place::finite(17)));  // odd valuation
  CHECK_FALSE(is_square_local(-4, Place::infinity()));
  CHECK(is_square_local(-4, Place::finite(5)));  // -4 = 1 mod 5

  SUBCASE("rational arguments reduce to the product of the pair") {
    CHECK(is_square_local(4, 9, Place::finite(7)));
    CHECK(is_square_local(1, 2, Place::finite(7)));       // 1/2 ~ 2, a residue mod 7
    CHECK_FALSE(is_square_local(1, 3, Place::finite(7)));  // 1/3 ~ 3, a nonresidue
    CHECK(is_square_local(17, 13, Place::finite(17)) ==
          is_square_local(17 * 13, Place::finite(17)));
  }

  CHECK_THROWS_AS(is_square_local(0, 1, Place::finite(3)), std::invalid_argument);
  CHECK_THROWS_AS(is_square_local(1, 0, Place::finite(3)), std::invalid_argument);
}

TEST_CASE("hilbert symbol examples") {
  for (const Place& v : {Place::infinity(), Place::finite(2), Place::finite(3), Place::finite(17),
                         Place::finite(47)}) {
    CHECK(hilbert_symbol(17, 1, v) == 1);
  }
  CHECK(hilbert_symbol(17, 3, Place::finite(17)) == -1);
  for (Int b : {1, 3, 5, 7, 9, 11, 13, 15, -1, -3, -5}) {
    CHECK(hilbert_symbol(17, b, Place::finite(2)) == 1);
  }
  CHECK(hilbert_symbol(-1, -1, Place::infinity()) == -1);
  CHECK(hilbert_symbol(-1, -1, Place::finite(2)) == -1);
  CHECK_THROWS_AS(hilbert_symbol(0, 3, Place::finite(5)), std::invalid_argument);
}

TEST_CASE("hilbert symbol algebraic identities") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int64_t> dist(-200, 200);
  const std::vector<Place> places = {Place::infinity(), Place::finite(2), Place::finite(3),
                                     Place::finite(5), Place::finite(17), Place::finite(47)};
  for (int i = 0; i < 300; ++i) {
    Int a = dist(rng), b = dist(rng), c = dist(rng);
    if (a == 0 || b == 0 || c == 0) continue;
    for (const Place& v : places) {
      CHECK(hilbert_symbol(a, b, v) == hilbert_symbol(b, a, v));
      CHECK(hilbert_symbol(a, b * c, v) == hilbert_symbol(a, b, v) * hilbert_symbol(a, c, v));
      CHECK(hilbert_symbol(a, -a, v) == 1);
      if (a != 1) CHECK(hilbert_symbol(a, 1 - a, v) == 1);
    }
  }
}

TEST_CASE("hilbert product formula over all places") {
  std::mt19937_64 rng(42);
  std::uniform_int_distribution<int64_t> dist(1, 10'000);
  std::bernoulli_distribution sign(0.5);
  for (int i = 0; i < 300; ++i) {
    Int a = dist(rng) * (sign(rng) ? 1 : -1);
    Int b = dist(rng) * (sign(rng) ? 1 : -1);
    int prod = hilbert_symbol(a, b, Place::infinity()) * hilbert_symbol(a, b, Place::finite(2));
    std::set<Int> odd_primes;
    for (const auto& [p, e] : factorize(a)) {
      if (p != 2) odd_primes.insert(p);
    }
    for (const auto& [p, e] : factorize(b)) {
      if (p != 2) odd_primes.insert(p);
    }
    for (Int p : odd_primes) prod *= hilbert_symbol(a, b, Place::finite(p));
    CHECK(prod == 1);
  }
}

TEST_CASE("local invariants") {
  CHECK(invariant(17, 14, Place::finite(17)) == LocalInvariant::half());
  CHECK(invariant(17, 13, Place::finite(17)) == LocalInvariant::zero());
  CHECK(invariant(17, -1, Place::infinity()) == LocalInvariant::zero());

  CHECK(LocalInvariant::half() + LocalInvariant::half() == LocalInvariant::zero());
  CHECK(LocalInvariant::half() + LocalInvariant::zero() == LocalInvariant::half());
  CHECK(LocalInvariant::zero().str() == "0");
  CHECK(LocalInvariant::half().str() == "1/2");
}

TEST_CASE("places") {
  CHECK_THROWS_AS(Place::finite(4), std::invalid_argument);
  CHECK_THROWS_AS(Place::finite(1), std::invalid_argument);
  CHECK(Place::infinity() < Place::finite(2));
  CHECK(Place::finite(2) < Place::finite(3));
  CHECK(Place::infinity().str() == "inf");
  CHECK(Place::finite(103).str() == "103");
  CHECK_THROWS_AS(Place::infinity().prime(), std::logic_error);
}

TEST_CASE("checked integer helpers") {
  CHECK(int_to_string(Int(-82297)) == "-82297");
  CHECK(parse_int("82297") == Int(82297));
  CHECK(parse_int(" -35 ") == Int(-35));
  CHECK_THROWS_AS(parse_int("12x"), std::invalid_argument);
  CHECK(isqrt_floor(Int(1648)) == 40);
  Int root = 0;
  CHECK(is_perfect_square(Int(2601), &root));
  CHECK(root == 51);
  CHECK_FALSE(is_perfect_square(Int(2602)));
  Int big = Int(1) << 126;
  CHECK_THROWS_AS(checked_mul(big, 4), OverflowError);
  CHECK_THROWS_AS(checked_add(big + (big - 1), 1), OverflowError);
  CHECK(squarefree_core(Int(398399777), Int(1) << 40) == 17);  // 17 * 47^2 * 103^2
  CHECK(squarefree_core(Int(-12)) == -3);
  CHECK_THROWS_AS(factorize(Int(2'000'003)), OverflowError);  // above the default cap
  CHECK(factorize(Int(82297)) ==
        std::vector<std::pair<Int, int>>{{17, 1}, {47, 1}, {103, 1}});
}
