#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "mhcount/errors.hpp"

namespace mhcount {

using std::int64_t;
using std::uint64_t;
using bigint = boost::multiprecision::cpp_int;

// ---- modular machinery -----------------------------------------------------

// (a * b) mod m without overflow, m < 2^63.
uint64_t mul_mod(uint64_t a, uint64_t b, uint64_t m);
uint64_t pow_mod(uint64_t base, uint64_t exp, uint64_t m);

// Canonical residue in [0, m).
int64_t normalize_mod(int64_t x, int64_t m);
int64_t normalize_mod(const bigint& x, int64_t m);

int64_t gcd_i64(int64_t a, int64_t b);

// Inverse of y mod q in [1, q); throws NotInvertible when gcd(y, q) > 1.
int64_t mod_inverse(int64_t y, int64_t q);

// Deterministic Miller-Rabin, exact for all 64-bit inputs.
bool is_prime(uint64_t n);

// Largest e with p^e | t; std::nullopt encodes the infinite order of t = 0.
std::optional<int64_t> p_adic_order(const bigint& t, int64_t p);

// x with x = r1 mod m1, x = r2 mod m2 for coprime m1, m2.
int64_t crt_pair(int64_t r1, int64_t m1, int64_t r2, int64_t m2);

// ---- factored moduli ---------------------------------------------------------

enum class ModulusKind { SquareFree, PrimePower };

struct ModulusFactor {
  int64_t prime;
  int exponent;
};

// Odd modulus q >= 3 that is either square-free or a single prime power.
class FactoredModulus {
 public:
  static FactoredModulus square_free(std::vector<int64_t> primes);
  static FactoredModulus prime_power(int64_t p, int exponent);

  ModulusKind kind() const { return kind_; }
  int64_t value() const { return value_; }
  const std::vector<ModulusFactor>& factors() const { return factors_; }

 private:
  FactoredModulus() = default;
  ModulusKind kind_ = ModulusKind::SquareFree;
  int64_t value_ = 0;
  std::vector<ModulusFactor> factors_;
};

int64_t euler_phi(const FactoredModulus& q);
// phi from scratch for arbitrary n >= 1 (trial-division factorization).
int64_t euler_phi(int64_t n);

// ---- prime selection ---------------------------------------------------------

enum class PrimeSelectionMode {
  // gcd(k_1 ... k_n, p - 1) = 1
  CoprimeToKMinusOne,
  // p = 3 mod 2|k_1 ... k_n|
  ThreeModTwoK,
};

struct PrimeSelection {
  double Q = 0;
  int r = 1;
  std::vector<int64_t> k_list;
  PrimeSelectionMode mode = PrimeSelectionMode::CoprimeToKMinusOne;
  std::vector<int64_t> primes;  // ascending, all in [Q, 2Q]
};

// All primes in [Q, 2Q] passing the mode's congruence test, ascending.
// Throws EmptySelection when none qualify.
std::vector<int64_t> select_primes(double Q, const std::vector<int64_t>& k_list,
                                   PrimeSelectionMode mode);

PrimeSelection select_prime_set(double Q, int r, std::vector<int64_t> k_list,
                                PrimeSelectionMode mode);

// Products of r distinct primes from the pool, lexicographic by factor tuple.
// Throws InsufficientPrimes when the pool has fewer than r primes.
std::vector<FactoredModulus> enumerate_moduli(const std::vector<int64_t>& primes, int r);

}  // namespace mhcount
