#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <numeric>

#include "mhcount/chars.hpp"
#include "mhcount/errors.hpp"
#include "oracles.hpp"

using namespace mhcount;
using doctest::Approx;

namespace {

FactoredModulus modulus_of(int64_t q) {
  const auto fs = oracle::factorize(q);
  if (fs.size() == 1 && fs[0].second > 1)
    return FactoredModulus::prime_power(fs[0].first, fs[0].second);
  std::vector<int64_t> ps;
  for (const auto& [p, e] : fs) ps.push_back(p);
  return FactoredModulus::square_free(ps);
}

}  // namespace

TEST_CASE("table shape: group and unit orders") {
  const auto t7 = build_character_table(modulus_of(7));
  CHECK(t7->group_order() == 6);
  CHECK(t7->unit_order() == 6);
  const auto t9 = build_character_table(modulus_of(9));
  CHECK(t9->group_order() == 6);
  const auto t35 = build_character_table(modulus_of(35));
  CHECK(t35->group_order() == 24);
  CHECK(t35->unit_order() == 12);  // lcm(phi(5), phi(7)) = lcm(4, 6)
  const auto t225 = build_character_table(FactoredModulus::prime_power(5, 2));
  CHECK(t225->group_order() == 20);
}

TEST_CASE("per-factor discrete logs invert exponentiation") {
  for (int64_t q : {13, 49, 15}) {
    const auto table = build_character_table(modulus_of(q));
    for (const auto& fd : table->factor_data()) {
      for (int64_t x = 1; x < fd.prime_power; ++x) {
        if (std::gcd(x, fd.prime_power) != 1) {
          CHECK(fd.dlog[static_cast<size_t>(x)] == CharacterTable::kNoLog);
          continue;
        }
        const auto d = fd.dlog[static_cast<size_t>(x)];
        CHECK(d < fd.phi);
        CHECK(oracle::pow_mod(fd.root, d, fd.prime_power) == x);
      }
    }
  }
}

TEST_CASE("character values: unit circle on units, zero elsewhere") {
  for (int64_t q : {5, 9, 21, 35, 27}) {
    const auto table = build_character_table(modulus_of(q));
    for (int64_t i = 0; i < table->group_order(); ++i) {
      const Character chi = table->character_at(i);
      for (int64_t x = 0; x < q; ++x) {
        const auto v = chi(x);
        if (std::gcd(x, q) == 1) {
          CHECK(std::abs(v) == Approx(1.0).epsilon(1e-12));
          const int64_t idx = chi.root_index(x);
          CHECK(idx >= 0);
          CHECK(idx < table->unit_order());
          const double angle = 2.0 * 3.14159265358979323846 * static_cast<double>(idx) /
                               static_cast<double>(table->unit_order());
          CHECK(std::abs(v - std::complex<double>(std::cos(angle), std::sin(angle))) < 1e-12);
        } else {
          CHECK(v == std::complex<double>(0.0, 0.0));
          CHECK(chi.root_index(x) == -1);
        }
      }
      CHECK(chi(1) == std::complex<double>(1.0, 0.0));
    }
  }
}

TEST_CASE("multiplicativity on random unit pairs") {
  auto rng = oracle::make_rng(11);
  for (int64_t q : {7, 9, 25, 35, 105}) {
    const auto table = build_character_table(modulus_of(q));
    for (int rep = 0; rep < 40; ++rep) {
      const int64_t i = static_cast<int64_t>(rng() % static_cast<uint64_t>(table->group_order()));
      const Character chi = table->character_at(i);
      int64_t x = static_cast<int64_t>(rng() % static_cast<uint64_t>(q));
      int64_t y = static_cast<int64_t>(rng() % static_cast<uint64_t>(q));
      while (std::gcd(x, q) != 1) x = (x + 1) % q;
      while (std::gcd(y, q) != 1) y = (y + 1) % q;
      CHECK(std::abs(chi(x * y % q) - chi(x) * chi(y)) < 1e-12);
    }
  }
}

TEST_CASE("principal character is the unit indicator") {
  const auto table = build_character_table(modulus_of(45 / 3 * 7));  // 105
  const Character chi0 = table->principal();
  CHECK(chi0.is_principal());
  for (int64_t x = 0; x < 105; ++x) {
    const auto v = chi0(x);
    if (std::gcd(x, int64_t{105}) == 1)
      CHECK(v == std::complex<double>(1.0, 0.0));
    else
      CHECK(v == std::complex<double>(0.0, 0.0));
  }
}

TEST_CASE("index enumeration round trips through exponents") {
  const auto table = build_character_table(modulus_of(35));
  CHECK(table->character_at(0).is_principal());
  for (int64_t i = 0; i < table->group_order(); ++i) {
    const Character chi = table->character_at(i);
    const Character again = table->character(chi.exponents());
    CHECK(again.exponents() == chi.exponents());
    for (int64_t x : {1, 2, 3, 4, 6, 8}) CHECK(chi(x) == again(x));
  }
  CHECK_THROWS_AS(table->character_at(-1), BadIndex);
  CHECK_THROWS_AS(table->character_at(24), BadIndex);
}

TEST_CASE("orders divide the group exponent; generator attains it") {
  for (int64_t q : {7, 9, 25, 35}) {
    const auto table = build_character_table(modulus_of(q));
    for (int64_t i = 0; i < table->group_order(); ++i) {
      const Character chi = table->character_at(i);
      const int64_t t = chi.order();
      CHECK(table->unit_order() % t == 0);
      CHECK(character_order(chi) == t);
      // chi^t is principal, chi^(t/p) is not for any prime p | t
      CHECK(chi.power(t).is_principal());
      for (const auto& [p, e] : oracle::factorize(t))
        CHECK_FALSE(chi.power(t / p).is_principal());
    }
    CHECK(table->generator().order() == table->unit_order());
  }
}

TEST_CASE("quadratic character equals the Legendre symbol") {
  for (int64_t p : {5, 11, 13, 23}) {
    const auto table = build_character_table(modulus_of(p));
    Character quad = table->principal();
    for (int64_t i = 0; i < table->group_order(); ++i)
      if (table->character_at(i).order() == 2) quad = table->character_at(i);
    REQUIRE(quad.order() == 2);
    for (int64_t x = 0; x < p; ++x) {
      const auto v = quad(x);
      CHECK(std::abs(v.imag()) < 1e-15);
      CHECK(static_cast<int64_t>(std::llround(v.real())) == oracle::legendre(x, p));
    }
  }
}

TEST_CASE("primitivity detection mod prime powers and composites") {
  // mod a prime every non-principal character is primitive
  const auto t11 = build_character_table(modulus_of(11));
  for (int64_t i = 0; i < 10; ++i)
    CHECK(t11->character_at(i).is_primitive() == (i != 0));

  // mod 9 the characters factoring through mod 3 are imprimitive: mu = 0, 3
  const auto t9 = build_character_table(modulus_of(9));
  int primitive = 0, imprimitive = 0;
  for (int64_t i = 0; i < 6; ++i)
    (t9->character_at(i).is_primitive() ? primitive : imprimitive)++;
  CHECK(primitive == 4);
  CHECK(imprimitive == 2);

  // mod 35 primitivity needs both components nontrivial
  const auto t35 = build_character_table(modulus_of(35));
  int count = 0;
  for (int64_t i = 0; i < 24; ++i)
    if (t35->character_at(i).is_primitive()) ++count;
  CHECK(count == (4 - 1) * (6 - 1));
}

TEST_CASE("power, product and conjugate act pointwise") {
  auto rng = oracle::make_rng(12);
  const auto table = build_character_table(modulus_of(35));
  for (int rep = 0; rep < 25; ++rep) {
    const Character a = table->character_at(
        static_cast<int64_t>(rng() % static_cast<uint64_t>(table->group_order())));
    const Character b = table->character_at(
        static_cast<int64_t>(rng() % static_cast<uint64_t>(table->group_order())));
    const int64_t k = static_cast<int64_t>(rng() % 13) - 6;
    for (int64_t x : {1, 2, 3, 4, 6, 9, 11}) {
      CHECK(std::abs(a.power(k)(x) - std::pow(a(x), std::complex<double>(
                                                        static_cast<double>(k), 0.0))) < 1e-9);
      CHECK(std::abs(a.times(b)(x) - a(x) * b(x)) < 1e-12);
      CHECK(std::abs(a.conjugate()(x) - std::conj(a(x))) < 1e-12);
    }
  }
}

TEST_CASE("conductor split factors values across coprime parts") {
  const auto table = build_character_table(modulus_of(105));
  auto rng = oracle::make_rng(13);
  for (int rep = 0; rep < 15; ++rep) {
    const Character chi = table->character_at(
        static_cast<int64_t>(rng() % static_cast<uint64_t>(table->group_order())));
    const Character away = conductor_split(chi, 5);
    const Character at = component_character(chi, 5);
    CHECK(away.table()->modulus_value() == 21);
    CHECK(at.table()->modulus_value() == 5);
    for (int64_t x = 1; x < 105; ++x) {
      if (std::gcd(x, int64_t{105}) != 1) continue;
      CHECK(std::abs(chi(x) - away(x % 21) * at(x % 5)) < 1e-12);
    }
  }
  CHECK_THROWS_AS(conductor_split(table->character_at(1), 11), NotAFactor);
  const auto t9 = build_character_table(modulus_of(9));
  CHECK_THROWS_AS(conductor_split(t9->character_at(1), 3), BadRange);
}

TEST_CASE("unit root table agrees with cos/sin") {
  const RootOfUnityTable roots(12);
  for (int64_t t = 0; t < 12; ++t) {
    const double angle = 2.0 * 3.14159265358979323846 * static_cast<double>(t) / 12.0;
    CHECK(std::abs(roots.at(t) - std::complex<double>(std::cos(angle), std::sin(angle))) <
          1e-15);
  }
}
