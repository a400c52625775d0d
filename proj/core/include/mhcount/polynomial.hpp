#pragma once

#include <initializer_list>
#include <string>
#include <vector>

#include "mhcount/arith.hpp"

namespace mhcount {

// Dense integer polynomial, constant coefficient first. Values are computed
// in arbitrary precision; box coordinates routinely push f(x) past 64 bits.
class IntegerPolynomial {
 public:
  IntegerPolynomial() = default;
  explicit IntegerPolynomial(std::vector<bigint> coeffs);
  IntegerPolynomial(std::initializer_list<int64_t> coeffs);

  // X^d
  static IntegerPolynomial power(int d);

  // -1 for the zero polynomial
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<bigint>& coefficients() const { return coeffs_; }
  const bigint& leading() const;
  bool is_zero() const { return coeffs_.empty(); }

  bigint eval(const bigint& x) const;
  // f(x) mod q via Horner on reduced coefficients; exact.
  int64_t eval_mod(int64_t x, int64_t q) const;

  std::string to_string() const;

 private:
  std::vector<bigint> coeffs_;  // trailing zeros stripped
};

// Coefficients of f reduced mod q, for tight evaluation loops.
class ReducedPolynomial {
 public:
  ReducedPolynomial(const IntegerPolynomial& f, int64_t q);
  // x must already be a residue in [0, q)
  int64_t eval(int64_t x) const;
  int64_t modulus() const { return q_; }
  int degree_mod() const;  // degree after reduction mod q, -1 if zero

 private:
  std::vector<int64_t> coeffs_;
  int64_t q_;
};

// Sum of monomials (a_i / q_i) X^i with gcd(a_i, q_i) = 1, distinct powers.
// Used as the phase polynomial of exponential sums; phases are reduced mod 1
// in exact rational arithmetic before any float conversion.
struct RationalTerm {
  bigint numerator;
  bigint denominator;  // >= 1
  int power;           // >= 0
};

class RationalExpPolynomial {
 public:
  RationalExpPolynomial() = default;
  explicit RationalExpPolynomial(std::vector<RationalTerm> terms);

  // -1 when there are no terms
  int degree() const;
  const std::vector<RationalTerm>& terms() const { return terms_; }
  // q_j of the X^j term, 1 when absent
  bigint denominator_of(int power) const;

  // G(x) mod 1 as an exact rational; returns {numerator, denominator} with
  // 0 <= numerator < denominator.
  std::pair<bigint, bigint> phase_mod1(const bigint& x) const;

 private:
  std::vector<RationalTerm> terms_;  // sorted by power, zero terms dropped
  bigint lcm_den_ = 1;
};

}  // namespace mhcount
