#include "mhcount/arith.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace mhcount {

uint64_t mul_mod(uint64_t a, uint64_t b, uint64_t m) {
  return static_cast<uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

uint64_t pow_mod(uint64_t base, uint64_t exp, uint64_t m) {
  if (m == 1) return 0;
  uint64_t acc = 1;
  base %= m;
  while (exp > 0) {
    if (exp & 1) acc = mul_mod(acc, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1;
  }
  return acc;
}

int64_t normalize_mod(int64_t x, int64_t m) {
  int64_t r = x % m;
  return r < 0 ? r + m : r;
}

int64_t normalize_mod(const bigint& x, int64_t m) {
  bigint r = x % m;
  if (r < 0) r += m;
  return static_cast<int64_t>(r);
}

int64_t gcd_i64(int64_t a, int64_t b) {
  return static_cast<int64_t>(std::gcd(a, b));
}

int64_t mod_inverse(int64_t y, int64_t q) {
  if (q < 2) throw NotInvertible("mod_inverse: modulus must be >= 2");
  int64_t a = normalize_mod(y, q);
  // extended gcd on (a, q); old_s tracks the Bezout coefficient of a
  int64_t old_r = a, r = q;
  int64_t old_s = 1, s = 0;
  while (r != 0) {
    int64_t qt = old_r / r;
    int64_t tmp = old_r - qt * r;
    old_r = r;
    r = tmp;
    tmp = old_s - qt * s;
    old_s = s;
    s = tmp;
  }
  if (old_r != 1) throw NotInvertible("mod_inverse: argument shares a factor with the modulus");
  return normalize_mod(old_s, q);
}

namespace {

bool mr_witness(uint64_t n, uint64_t d, int s, uint64_t a) {
  uint64_t x = pow_mod(a % n, d, n);
  if (x == 1 || x == n - 1) return false;
  for (int i = 1; i < s; ++i) {
    x = mul_mod(x, x, n);
    if (x == n - 1) return false;
  }
  return true;  // a proves n composite
}

}  // namespace

bool is_prime(uint64_t n) {
  if (n < 2) return false;
  for (uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n == p) return true;
    if (n % p == 0) return false;
  }
  uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // Deterministic witness set for the full 64-bit range.
  for (uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (mr_witness(n, d, s, a)) return false;
  }
  return true;
}

std::optional<int64_t> p_adic_order(const bigint& t, int64_t p) {
  if (p < 2) throw BadRange("p_adic_order: p must be >= 2");
  if (t == 0) return std::nullopt;
  bigint v = t < 0 ? bigint(-t) : t;
  int64_t e = 0;
  while (v % p == 0) {
    v /= p;
    ++e;
  }
  return e;
}

int64_t crt_pair(int64_t r1, int64_t m1, int64_t r2, int64_t m2) {
  if (gcd_i64(m1, m2) != 1) throw BadRange("crt_pair: moduli must be coprime");
  // x = r1 + m1 * t with t = (r2 - r1) / m1 mod m2
  int64_t inv = mod_inverse(m1 % m2, m2);
  int64_t diff = normalize_mod(r2 - normalize_mod(r1, m2), m2);
  int64_t t = static_cast<int64_t>(mul_mod(static_cast<uint64_t>(diff), static_cast<uint64_t>(inv),
                                           static_cast<uint64_t>(m2)));
  return r1 + m1 * t;
}

FactoredModulus FactoredModulus::square_free(std::vector<int64_t> primes) {
  if (primes.empty()) throw BadRange("square_free: needs at least one prime");
  std::sort(primes.begin(), primes.end());
  FactoredModulus q;
  q.kind_ = ModulusKind::SquareFree;
  unsigned __int128 prod = 1;
  for (size_t i = 0; i < primes.size(); ++i) {
    int64_t p = primes[i];
    if (p < 3 || p % 2 == 0 || !is_prime(static_cast<uint64_t>(p)))
      throw BadRange("square_free: factors must be odd primes");
    if (i > 0 && primes[i - 1] == p)
      throw BadRange("square_free: factors must be distinct");
    prod *= static_cast<unsigned __int128>(p);
    if (prod > static_cast<unsigned __int128>(INT64_MAX))
      throw ModulusTooLarge("square_free: product exceeds 2^63");
    q.factors_.push_back({p, 1});
  }
  q.value_ = static_cast<int64_t>(prod);
  return q;
}

FactoredModulus FactoredModulus::prime_power(int64_t p, int exponent) {
  if (p < 3 || p % 2 == 0 || !is_prime(static_cast<uint64_t>(p)))
    throw BadRange("prime_power: p must be an odd prime");
  if (exponent < 1) throw BadRange("prime_power: exponent must be >= 1");
  unsigned __int128 prod = 1;
  for (int i = 0; i < exponent; ++i) {
    prod *= static_cast<unsigned __int128>(p);
    if (prod > static_cast<unsigned __int128>(INT64_MAX))
      throw ModulusTooLarge("prime_power: value exceeds 2^63");
  }
  FactoredModulus q;
  q.kind_ = ModulusKind::PrimePower;
  q.value_ = static_cast<int64_t>(prod);
  q.factors_.push_back({p, exponent});
  return q;
}

int64_t euler_phi(const FactoredModulus& q) {
  int64_t phi = 1;
  for (const auto& f : q.factors()) {
    int64_t pe = 1;
    for (int i = 0; i < f.exponent - 1; ++i) pe *= f.prime;
    phi *= pe * (f.prime - 1);
  }
  return phi;
}

int64_t euler_phi(int64_t n) {
  if (n < 1) throw BadRange("euler_phi: n must be >= 1");
  int64_t phi = 1;
  int64_t m = n;
  for (int64_t p = 2; p * p <= m; ++p) {
    if (m % p != 0) continue;
    int64_t pe = 1;
    m /= p;
    while (m % p == 0) {
      pe *= p;
      m /= p;
    }
    phi *= pe * (p - 1);
  }
  if (m > 1) phi *= m - 1;
  return phi;
}

std::vector<int64_t> select_primes(double Q, const std::vector<int64_t>& k_list,
                                   PrimeSelectionMode mode) {
  if (!(Q >= 3)) throw BadRange("select_primes: Q must be >= 3");
  if (k_list.empty()) throw BadRange("select_primes: k_list must be nonempty");
  bigint K = 1;
  for (int64_t k : k_list) {
    if (k == 0) throw BadRange("select_primes: exponents must be nonzero");
    K *= k < 0 ? bigint(-k) : bigint(k);
  }
  const int64_t lo = static_cast<int64_t>(std::ceil(Q));
  const int64_t hi = static_cast<int64_t>(std::floor(2 * Q));
  std::vector<int64_t> out;
  for (int64_t p = lo; p <= hi; ++p) {
    if (!is_prime(static_cast<uint64_t>(p))) continue;
    bool ok = false;
    switch (mode) {
      case PrimeSelectionMode::CoprimeToKMinusOne:
        ok = boost::multiprecision::gcd(K, bigint(p - 1)) == 1;
        break;
      case PrimeSelectionMode::ThreeModTwoK: {
        bigint m = 2 * K;
        ok = bigint(p) % m == bigint(3) % m;
        break;
      }
    }
    if (ok) out.push_back(p);
  }
  if (out.empty()) throw EmptySelection("select_primes: no prime in [Q, 2Q] qualifies");
  return out;
}

PrimeSelection select_prime_set(double Q, int r, std::vector<int64_t> k_list,
                                PrimeSelectionMode mode) {
  if (r < 1) throw BadRange("select_prime_set: r must be >= 1");
  PrimeSelection sel;
  sel.Q = Q;
  sel.r = r;
  sel.mode = mode;
  sel.primes = select_primes(Q, k_list, mode);
  if (sel.primes.size() < static_cast<size_t>(r))
    throw InsufficientPrimes("select_prime_set: fewer than r primes in the window");
  sel.k_list = std::move(k_list);
  return sel;
}

std::vector<FactoredModulus> enumerate_moduli(const std::vector<int64_t>& primes, int r) {
  if (r < 1) throw BadRange("enumerate_moduli: r must be >= 1");
  if (static_cast<size_t>(r) > primes.size())
    throw InsufficientPrimes("enumerate_moduli: pool smaller than r");
  std::vector<int64_t> pool(primes);
  std::sort(pool.begin(), pool.end());
  std::vector<FactoredModulus> out;
  std::vector<int64_t> current;
  // lexicographic combinations over the sorted pool
  auto rec = [&](auto&& self, size_t start) -> void {
    if (current.size() == static_cast<size_t>(r)) {
      out.push_back(FactoredModulus::square_free(current));
      return;
    }
    for (size_t i = start; i + (r - current.size()) <= pool.size(); ++i) {
      current.push_back(pool[i]);
      self(self, i + 1);
      current.pop_back();
    }
  };
  rec(rec, 0);
  return out;
}

}  // namespace mhcount
