#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>

#include "mhcount/arith.hpp"
#include "mhcount/errors.hpp"
#include "oracles.hpp"

using namespace mhcount;

TEST_CASE("mul_mod and pow_mod against wide arithmetic") {
  auto rng = oracle::make_rng(1);
  for (int i = 0; i < 2000; ++i) {
    const uint64_t m = rng() % 0x7fffffffffffffffULL + 1;
    const uint64_t a = rng() % m;
    const uint64_t b = rng() % m;
    const uint64_t expected =
        static_cast<uint64_t>(static_cast<unsigned __int128>(a) * b % m);
    CHECK(mul_mod(a, b, m) == expected);
  }
  CHECK(pow_mod(0, 0, 7) == 1);
  CHECK(pow_mod(3, 0, 7) == 1);
  CHECK(pow_mod(2, 10, 1000) == 24);
  for (int i = 0; i < 300; ++i) {
    const int64_t m = static_cast<int64_t>(rng() % 9973) + 2;
    const int64_t b = static_cast<int64_t>(rng() % static_cast<uint64_t>(m));
    const int64_t e = static_cast<int64_t>(rng() % 50);
    CHECK(pow_mod(static_cast<uint64_t>(b), static_cast<uint64_t>(e),
                  static_cast<uint64_t>(m)) ==
          static_cast<uint64_t>(oracle::pow_mod(b, e, m)));
  }
}

TEST_CASE("normalize_mod lands in [0, m) for both widths") {
  CHECK(normalize_mod(int64_t{-1}, 7) == 6);
  CHECK(normalize_mod(int64_t{-14}, 7) == 0);
  CHECK(normalize_mod(int64_t{15}, 7) == 1);
  CHECK(normalize_mod(bigint(-1), 7) == 6);
  CHECK(normalize_mod(bigint("-123456789123456789123456789"), 1000003) ==
        static_cast<int64_t>(
            ((bigint("-123456789123456789123456789") % 1000003) + 1000003) % 1000003));
}

TEST_CASE("gcd handles negatives") {
  CHECK(gcd_i64(-12, 18) == 6);
  CHECK(gcd_i64(0, 5) == 5);
  CHECK(gcd_i64(-7, -7) == 7);
}

TEST_CASE("mod_inverse round trips and rejects shared factors") {
  auto rng = oracle::make_rng(2);
  for (int i = 0; i < 500; ++i) {
    const int64_t q = static_cast<int64_t>(rng() % 100000) + 2;
    const int64_t y = static_cast<int64_t>(rng() % static_cast<uint64_t>(q));
    if (std::gcd(y, q) != 1) {
      CHECK_THROWS_AS(mod_inverse(y, q), NotInvertible);
    } else {
      const int64_t w = mod_inverse(y, q);
      CHECK(w >= 1);
      CHECK(w < q);
      CHECK(static_cast<int64_t>(static_cast<unsigned __int128>(w) * static_cast<uint64_t>(y) %
                                 static_cast<uint64_t>(q)) == 1 % q);
    }
  }
  CHECK_THROWS_AS(mod_inverse(1, 1), NotInvertible);
}

TEST_CASE("primality matches trial division and known liars") {
  for (int64_t n = 0; n <= 10000; ++n)
    CHECK(is_prime(static_cast<uint64_t>(n)) == oracle::is_prime_naive(n));
  // Carmichael numbers and strong-pseudoprime targets
  CHECK_FALSE(is_prime(561));
  CHECK_FALSE(is_prime(41041));
  CHECK_FALSE(is_prime(3215031751ULL));
  CHECK_FALSE(is_prime(3825123056546413051ULL));
  CHECK(is_prime((1ULL << 61) - 1));
  CHECK(is_prime(18446744073709551557ULL));  // largest 64-bit prime
}

TEST_CASE("p-adic order counts exactly, with infinity at zero") {
  CHECK(p_adic_order(bigint(54), 3) == 3);
  CHECK(p_adic_order(bigint(40), 2) == 3);
  CHECK(p_adic_order(bigint(7), 5) == 0);
  CHECK(p_adic_order(bigint(-45), 3) == 2);
  CHECK_FALSE(p_adic_order(bigint(0), 3).has_value());
}

TEST_CASE("crt_pair reconstructs residues") {
  auto rng = oracle::make_rng(3);
  for (int i = 0; i < 200; ++i) {
    const int64_t m1 = 3 + 2 * static_cast<int64_t>(rng() % 50);
    int64_t m2 = 3 + 2 * static_cast<int64_t>(rng() % 50);
    while (std::gcd(m1, m2) != 1) m2 += 2;
    const int64_t x = static_cast<int64_t>(rng() % static_cast<uint64_t>(m1 * m2));
    CHECK(crt_pair(x % m1, m1, x % m2, m2) == x);
  }
}

TEST_CASE("factored moduli validate their shapes") {
  const auto q = FactoredModulus::square_free({3, 5, 7});
  CHECK(q.value() == 105);
  CHECK(q.kind() == ModulusKind::SquareFree);
  CHECK(q.factors().size() == 3);
  const auto p = FactoredModulus::prime_power(3, 4);
  CHECK(p.value() == 81);
  CHECK(p.kind() == ModulusKind::PrimePower);

  CHECK_THROWS_AS(FactoredModulus::square_free({4}), Error);       // not prime
  CHECK_THROWS_AS(FactoredModulus::square_free({2, 3}), Error);    // even
  CHECK_THROWS_AS(FactoredModulus::square_free({3, 3}), Error);    // repeated
  CHECK_THROWS_AS(FactoredModulus::square_free({}), Error);        // empty
  CHECK_THROWS_AS(FactoredModulus::prime_power(5, 0), Error);
  CHECK_THROWS_AS(FactoredModulus::prime_power(9, 2), Error);
}

TEST_CASE("euler_phi agrees with the naive oracle") {
  for (int64_t n = 1; n <= 2000; ++n) CHECK(euler_phi(n) == oracle::phi(n));
  CHECK(euler_phi(FactoredModulus::square_free({3, 5, 7})) == oracle::phi(105));
  CHECK(euler_phi(FactoredModulus::prime_power(7, 3)) == oracle::phi(343));
}

TEST_CASE("prime selection by coprimality of K with p-1") {
  // K = 1 accepts every prime in the window
  CHECK(select_primes(3, {1}, PrimeSelectionMode::CoprimeToKMinusOne) ==
        std::vector<int64_t>{3, 5});
  // K = 3: need gcd(3, p-1) = 1, so p != 1 mod 3
  const auto ps = select_primes(10, {3}, PrimeSelectionMode::CoprimeToKMinusOne);
  for (int64_t p : ps) {
    CHECK(oracle::is_prime_naive(p));
    CHECK(p >= 10);
    CHECK(p <= 20);
    CHECK(std::gcd(int64_t{3}, p - 1) == 1);
  }
  CHECK(ps == std::vector<int64_t>{11, 17});
}

TEST_CASE("prime selection by residue 3 mod 2K") {
  // K = 1: p = 3 mod 2 means every odd prime in the window qualifies
  CHECK(select_primes(3, {1}, PrimeSelectionMode::ThreeModTwoK) ==
        std::vector<int64_t>{3, 5});
  // K = 2: p = 3 mod 4
  const auto ps = select_primes(10, {2}, PrimeSelectionMode::ThreeModTwoK);
  CHECK(ps == std::vector<int64_t>{11, 19});
  // impossible residue class: p = 3 mod 18 is divisible by 3
  CHECK_THROWS_AS(select_primes(100, {9}, PrimeSelectionMode::ThreeModTwoK), EmptySelection);
}

TEST_CASE("select_prime_set requires r primes") {
  const auto sel = select_prime_set(10, 2, {1}, PrimeSelectionMode::CoprimeToKMinusOne);
  CHECK(sel.primes.size() >= 2);
  CHECK(sel.r == 2);
  CHECK_THROWS_AS(select_prime_set(3, 5, {1}, PrimeSelectionMode::CoprimeToKMinusOne),
                  InsufficientPrimes);
}

TEST_CASE("enumerate_moduli walks r-subsets lexicographically") {
  const auto one = enumerate_moduli({3, 5, 7}, 1);
  REQUIRE(one.size() == 3);
  CHECK(one[0].value() == 3);
  CHECK(one[1].value() == 5);
  CHECK(one[2].value() == 7);
  const auto two = enumerate_moduli({3, 5, 7}, 2);
  REQUIRE(two.size() == 3);
  CHECK(two[0].value() == 15);
  CHECK(two[1].value() == 21);
  CHECK(two[2].value() == 35);
  CHECK_THROWS_AS(enumerate_moduli({3}, 2), InsufficientPrimes);
}
