#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "mhcount/errors.hpp"
#include "mhcount/postnikov.hpp"
#include "oracles.hpp"

using namespace mhcount;

namespace {

CharacterTablePtr table_mod(int64_t p, int r) {
  return build_character_table(FactoredModulus::prime_power(p, r));
}

bool has_flag(const SumReport& rep, const char* name) {
  return std::find(rep.flags.begin(), rep.flags.end(), name) != rep.flags.end();
}

}  // namespace

TEST_CASE("generator phase polynomial mod 25") {
  const auto table = table_mod(5, 2);
  const auto F = build_postnikov(table->generator());
  REQUIRE(F.coeffs.size() == 1);
  CHECK(F.coeffs[0] == 2);
  CHECK(F.p == 5);
  CHECK(F.r == 2);
  CHECK(F.q == 25);
  CHECK(F.source_exponent == 1);
  CHECK(F.unit_coefficients);
  CHECK(verify_postnikov(F, table->generator()) < 1e-12);
}

TEST_CASE("shift identity holds exhaustively across the group") {
  const std::vector<std::pair<int64_t, int>> shapes{{3, 2}, {5, 2}, {5, 3}, {7, 2}, {7, 3}};
  for (const auto& [p, r] : shapes) {
    const auto table = table_mod(p, r);
    const int64_t n = table->group_order();
    const int64_t stride = std::max<int64_t>(1, n / 16);
    for (int64_t i = 0; i < n; i += stride) {
      const Character chi = table->character_at(i);
      const auto F = build_postnikov(chi);
      CHECK(verify_postnikov(F, chi) < 1e-9);
    }
  }
}

TEST_CASE("doubling the character doubles the phase coefficients") {
  for (const auto& [p, r] : std::vector<std::pair<int64_t, int>>{{5, 3}, {7, 3}, {11, 2}}) {
    const auto table = table_mod(p, r);
    const Character g = table->generator();
    const auto F1 = build_postnikov(g);
    for (int64_t j : {2, 3}) {
      const auto Fj = build_postnikov(g.power(j));
      REQUIRE(Fj.coeffs.size() == F1.coeffs.size());
      for (size_t k = 0; k < F1.coeffs.size(); ++k)
        CHECK(Fj.coeffs[k] == j * F1.coeffs[k] % F1.q);
    }
  }
}

TEST_CASE("a corrupted coefficient is caught by the verifier") {
  const auto table = table_mod(7, 2);
  const Character chi = table->character_at(3);
  auto F = build_postnikov(chi);
  REQUIRE(verify_postnikov(F, chi) < 1e-9);
  F.coeffs[0] = (F.coeffs[0] + 1) % F.q;
  CHECK(verify_postnikov(F, chi) > 0.1);
}

TEST_CASE("coefficients are units exactly when p does not divide the exponent") {
  const auto table = table_mod(5, 2);
  for (int64_t mu = 0; mu < table->group_order(); ++mu) {
    const auto F = build_postnikov(table->character_at(mu));
    CHECK(F.unit_coefficients == (mu % 5 != 0));
    CHECK(verify_postnikov(F, table->character_at(mu)) < 1e-9);
  }
}

TEST_CASE("construction needs more precision than the expansion order") {
  CHECK_THROWS_AS(build_postnikov(table_mod(3, 3)->generator()), PrecisionUnavailable);
  CHECK_THROWS_AS(build_postnikov(table_mod(5, 6)->generator()), PrecisionUnavailable);
  // mismatched verification inputs are rejected
  const auto F = build_postnikov(table_mod(5, 2)->generator());
  CHECK_THROWS_AS(verify_postnikov(F, table_mod(7, 2)->generator()), BadRange);
}

TEST_CASE("prime modulus needs no correction polynomial") {
  const auto table = table_mod(13, 1);
  const auto F = build_postnikov(table->character_at(5));
  CHECK(F.coeffs.empty());
  CHECK(F.eval_mod_q(7) == 0);
  CHECK(verify_postnikov(F, table->character_at(5)) == 0.0);
}

TEST_CASE("phase evaluation matches a direct power sum") {
  const auto table = table_mod(7, 3);
  const auto F = build_postnikov(table->generator());
  for (int64_t Z = -10; Z < 343; Z += 13) {
    int64_t want = 0;
    const int64_t zn = ((Z % 343) + 343) % 343;
    for (size_t k = 0; k < F.coeffs.size(); ++k) {
      const int64_t zp = oracle::pow_mod(zn, static_cast<int64_t>(k) + 1, 343);
      want = (want + F.coeffs[k] % 343 * zp) % 343;
    }
    CHECK(F.eval_mod_q(Z) == want);
  }
}

TEST_CASE("prime power window sums: value, bound, diagnostics") {
  const IntegerPolynomial f{1, 2, 0, 1};  // degree 3 covers r up to 3
  const auto rep = prime_power_mixed_sum(5, 2, f, 3, 7, 0, 100);
  const auto table = table_mod(5, 2);
  CHECK(rep.value == incomplete_mixed_sum(table->generator(), 7, f, 3, 0, 100));
  CHECK(rep.bound == doctest::Approx(std::pow(100.0, 1.0 - 1.0 / 16.0)));
  CHECK(rep.params.at("m") == doctest::Approx(0.0));
  CHECK(rep.params.at("H") == doctest::Approx(20.0));
  CHECK(rep.params.at("p") == doctest::Approx(5.0));
  CHECK(rep.params.at("r") == doctest::Approx(2.0));
  // q = 25 < h = 100 violates q >= h >= p^3
  CHECK(has_flag(rep, "out-of-regime"));
  CHECK_FALSE(has_flag(rep, "postnikov-unavailable"));

  // p-adic orders feed the m diagnostic; zero side falls back to the other
  const auto r2 = prime_power_mixed_sum(5, 2, f, 5, 10, 0, 50);
  CHECK(r2.params.at("m") == doctest::Approx(1.0));
  const auto r3 = prime_power_mixed_sum(5, 2, f, 0, 5, 0, 50);
  CHECK(r3.params.at("m") == doctest::Approx(1.0));

  // in-regime shape: q = h = p^3 = 27, expansion order beyond precision
  const auto r4 = prime_power_mixed_sum(3, 3, f, 1, 1, 0, 27);
  CHECK_FALSE(has_flag(r4, "out-of-regime"));
  CHECK(has_flag(r4, "postnikov-unavailable"));
  CHECK(r4.bound == doctest::Approx(std::pow(27.0, 1.0 - 1.0 / 36.0)));
}

TEST_CASE("prime power window sums: input validation") {
  const IntegerPolynomial f{1, 2, 0, 1};
  CHECK_THROWS_AS(prime_power_mixed_sum(5, 0, f, 1, 1, 0, 10), BadRange);
  CHECK_THROWS_AS(prime_power_mixed_sum(5, 2, f, 25, 1, 0, 10), BadRange);
  CHECK_THROWS_AS(prime_power_mixed_sum(5, 2, f, -1, 1, 0, 10), BadRange);
  CHECK_THROWS_AS(prime_power_mixed_sum(5, 2, f, 1, 20, 0, 10), BadRange);
  CHECK_THROWS_AS(prime_power_mixed_sum(5, 2, f, 0, 0, 0, 10), BadRange);
  CHECK_THROWS_AS(prime_power_mixed_sum(5, 2, f, 1, 1, 0, 0), BadRange);
  CHECK_THROWS_AS(prime_power_mixed_sum(5, 3, IntegerPolynomial{0, 0, 1}, 1, 1, 0, 10),
                  DegreeUnsupported);
  CHECK_THROWS_AS(prime_power_mixed_sum(5, 2, IntegerPolynomial{1, 0, 5}, 1, 1, 0, 10),
                  DegenerateInput);
}
