#pragma once

#include <complex>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "mhcount/chars.hpp"
#include "mhcount/polynomial.hpp"

namespace mhcount {

// Comparator output: the exact sum next to a bound evaluated with implied
// constant 1. Ratios are reported, never asserted; flags mark inputs outside
// the regime a bound statement was made for.
struct SumReport {
  std::complex<double> value{0.0, 0.0};
  double magnitude = 0.0;
  double bound = 0.0;
  double ratio = 0.0;
  std::map<std::string, double> params;
  std::vector<std::string> flags;
};

// sum over u < x <= u+h of chi^k(x) e(lambda f(x) / q); terms with
// gcd(x, q) > 1 contribute 0. Exact phases: lambda f(x) is reduced mod q in
// integer arithmetic before the single float conversion per term.
std::complex<double> incomplete_mixed_sum(const Character& chi, int64_t k,
                                          const IntegerPolynomial& f, int64_t lambda,
                                          int64_t u, int64_t h, int workers = 1);

// G(chi, lambda) = sum over y = 1..q of chi(y) e(lambda y / q)
std::complex<double> gauss_sum(const Character& chi, int64_t lambda, int workers = 1);

// G(principal, lambda) in closed form; exact integer for square-free q.
int64_t ramanujan_sum(const FactoredModulus& q, int64_t lambda);
int64_t ramanujan_sum(int64_t q, int64_t lambda);  // any square-free q >= 1

// sum over z = 1..H of e(G(z)) for a rational-coefficient phase polynomial
std::complex<double> exp_sum(const RationalExpPolynomial& G, int64_t H, int workers = 1);

// sum over z = 1..H of e(G(z)/q) for integer G of degree 1 or 2 with
// gcd(leading coefficient, q) = 1. Bound: q for linear G,
// H q^{-1/2} + q^{1/2} log q for quadratic G.
SumReport linear_quadratic_bound(const IntegerPolynomial& G, int64_t H, int64_t q,
                                 int workers = 1);

// Degree-s rational phase, s >= 3: for each j in [2, s] the sum over
// z = 1..H is measured against H (q_j^{-1} + H^{-1} + q_j H^{-j})^sigma with
// sigma = 1 / (2 (s-1) (s-2)), q_j the denominator of the X^j term.
SumReport wooley_report(const RationalExpPolynomial& G, int64_t H, int j, int workers = 1);

// Prime modulus complete/incomplete mixed sum against p^{1/2} log p.
// Degenerate when chi is principal with lambda = 0 mod p, or when F has
// degree <= 1 after reduction mod p. Intervals shorter than p are flagged.
SumReport weil_report(int64_t p, const Character& chi, int64_t lambda,
                      const IntegerPolynomial& F, int64_t u, int64_t h, int workers = 1);

// sum over u < x <= u+h of psi(prod (x - v_i)^{d_i}) for square-free modulus.
// Requires gcd(d_1, ..., d_m, order(psi)) = 1 and a non-principal component
// at the largest prime factor ell_s. Bound: 4h (gcd(D, ell_s)/ell_s)^(2^-s)
// with D the product of root differences.
SumReport pure_sum_report(const Character& psi,
                          const std::vector<std::pair<bigint, int64_t>>& roots,
                          int64_t u, int64_t h, int workers = 1);

// sum over u < x <= u+h of chi(x) e(F(x)) for square-free q with r prime
// factors drawn from [Q, 2Q] and rational-coefficient F of degree d.
// Bound: h Q^{-gamma}, gamma = 1 / (2^{r+1} (d+1) (d+2)); the statement
// needs h >= (2Q)^{9/4}, shorter intervals are flagged.
SumReport mixed_squarefree_report(const Character& chi, const RationalExpPolynomial& F,
                                  double Q, int64_t u, int64_t h, int workers = 1);

}  // namespace mhcount
