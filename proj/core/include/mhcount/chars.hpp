#pragma once

#include <complex>
#include <cstdint>
#include <memory>
#include <vector>

#include "mhcount/arith.hpp"

namespace mhcount {

// e(t / order) with the full cycle precomputed when it fits; larger orders
// fall back to direct evaluation. Both paths are deterministic.
class RootOfUnityTable {
 public:
  explicit RootOfUnityTable(int64_t order);
  int64_t order() const { return order_; }
  std::complex<double> at(int64_t t) const;  // t reduced mod order by caller

 private:
  int64_t order_;
  std::vector<std::complex<double>> table_;  // empty when order too large
};

class Character;

// Discrete-log tables for the unit group mod q, one cyclic block per prime
// power factor. Construction is deterministic: each factor uses the smallest
// primitive root mod p, lifted to p^e when needed.
class CharacterTable : public std::enable_shared_from_this<CharacterTable> {
 public:
  struct FactorData {
    int64_t prime = 0;
    int exponent = 1;
    int64_t prime_power = 0;  // p^e
    int64_t phi = 0;          // order of the cyclic block
    int64_t root = 0;         // its generator
    int64_t unit_scale = 1;   // unit_order / phi
    std::vector<uint32_t> dlog;  // residue -> discrete log, kNoLog off the units
  };
  static constexpr uint32_t kNoLog = UINT32_MAX;

  static std::shared_ptr<const CharacterTable> build(const FactoredModulus& q);

  const FactoredModulus& modulus() const { return q_; }
  int64_t modulus_value() const { return q_.value(); }
  int64_t group_order() const { return group_order_; }  // number of characters
  // lcm of the block orders; every character value is e(t / unit_order)
  int64_t unit_order() const { return unit_order_; }
  const std::vector<FactorData>& factor_data() const { return factors_; }

  std::complex<double> unit_root(int64_t t) const { return roots_.at(t); }

  Character principal() const;
  Character character(std::vector<int64_t> exponents) const;
  // mixed-radix enumeration, first factor least significant; index 0 is principal
  Character character_at(int64_t index) const;
  // exponent-1 character; generates the full character group for prime powers
  Character generator() const;

 private:
  CharacterTable(FactoredModulus q, std::vector<FactorData> factors, int64_t unit_order);

  FactoredModulus q_;
  std::vector<FactorData> factors_;
  int64_t group_order_;
  int64_t unit_order_;
  RootOfUnityTable roots_;
};

using CharacterTablePtr = std::shared_ptr<const CharacterTable>;

// Multiplicative character identified by its exponent vector against the
// table's per-factor generators; zero on arguments sharing a factor with q.
class Character {
 public:
  Character(CharacterTablePtr table, std::vector<int64_t> exponents);

  const CharacterTablePtr& table() const { return table_; }
  const std::vector<int64_t>& exponents() const { return mu_; }

  std::complex<double> operator()(int64_t x) const;
  std::complex<double> operator()(const bigint& x) const;

  // Exact discrete phase: chi(x) = e(root_index / unit_order); -1 off units.
  int64_t root_index(int64_t x) const;

  bool is_principal() const;
  // Component at every factor has full conductor.
  bool is_primitive() const;
  int64_t order() const;

  Character power(int64_t k) const;
  Character times(const Character& other) const;
  Character conjugate() const { return power(-1); }

 private:
  CharacterTablePtr table_;
  std::vector<int64_t> mu_;  // normalized into [0, phi_j) per factor
};

// Spec-level free functions.
CharacterTablePtr build_character_table(const FactoredModulus& q);
std::complex<double> eval_character(const Character& chi, int64_t x);
int64_t character_order(const Character& chi);

// Character mod q/p obtained by deleting the p-component; q must be
// square-free with at least two factors. Throws NotAFactor when p does not
// divide q.
Character conductor_split(const Character& chi, int64_t p);

// Single-factor character carrying just the p-component.
Character component_character(const Character& chi, int64_t p);

}  // namespace mhcount
