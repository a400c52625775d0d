#pragma once

#include <cstdint>
#include <vector>

#include "mhcount/chars.hpp"
#include "mhcount/expsums.hpp"
#include "mhcount/polynomial.hpp"

namespace mhcount {

// Phase polynomial F(Z) = A_1 Z + ... + A_{r-1} Z^{r-1} mod p^r with
// chi(y + p z) = chi(y) e(F(p w z) / p^r), w the canonical inverse of y.
// For characters of full conductor every A_k is a unit mod p; r = 1 gives
// the empty polynomial and the identity holds vacuously.
struct PostnikovPolynomial {
  int64_t p = 0;
  int r = 1;
  int64_t q = 0;                 // p^r
  std::vector<int64_t> coeffs;   // A_1 .. A_{r-1}, canonical in [0, q)
  int64_t source_exponent = 0;   // exponent of the character it was built for
  bool unit_coefficients = true; // gcd(A_k, p) = 1 for every k

  // F(Z) mod q; the constant term is zero by construction.
  int64_t eval_mod_q(int64_t Z) const;
};

// Construct F for a character mod p^r through the truncated p-adic logarithm
// sum over k = 1..r-1 of (-1)^(k+1) t^k / k, whose k-inverses exist mod p^r
// exactly when p > r. Throws PrecisionUnavailable for p <= r.
PostnikovPolynomial build_postnikov(const Character& chi);

// Exhaustive check of the shift identity over all units y mod p^r and all
// z in [0, p^{r-1}); returns the maximum absolute deviation. This verifier,
// not the construction, is the ground truth the tests trust.
double verify_postnikov(const PostnikovPolynomial& F, const Character& chi);

// sum over u < x <= u+h of chi^mu(x) e(lambda f(x) / p^r) for the generator
// character chi mod p^r, measured against h^{1 - 1/(4 r^2)}. Diagnostics
// carry m = min(ord_p lambda, ord_p mu) and H = floor(h/p); inputs outside
// q >= h >= p^3 are flagged, not rejected.
SumReport prime_power_mixed_sum(int64_t p, int r, const IntegerPolynomial& f,
                                int64_t lambda, int64_t mu, int64_t u, int64_t h,
                                int workers = 1);

}  // namespace mhcount
