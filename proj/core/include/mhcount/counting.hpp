#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "mhcount/arith.hpp"
#include "mhcount/chars.hpp"
#include "mhcount/polynomial.hpp"

namespace mhcount {

inline constexpr int64_t kDefaultBudget = 100'000'000;

// (f_1(x_1) + ... + f_n(x_n))^m = a x_1^{k_1} ... x_n^{k_n}; negative k_i are
// cleared to the other side over the integers and use modular inverses in
// congruence counts. Solutions always have every x_i nonzero.
struct HypersurfaceSpec {
  std::vector<IntegerPolynomial> f_list;
  std::vector<int64_t> k_list;
  bigint a = 1;
  int64_t m = 1;

  size_t dimension() const { return f_list.size(); }
  void validate() const;
};

// Per-coordinate ranges (u_i, u_i + h], one shared length.
struct Box {
  std::vector<int64_t> u_list;
  int64_t h = 0;

  static Box diagonal(int64_t u, size_t n, int64_t h);
  void validate(size_t n) const;
};

enum class CountMethod { FullEnumeration, SolveLast, CharacterIdentity, ResidueClasses };

const char* to_string(CountMethod m);

struct CountResult {
  bigint count = 0;
  CountMethod method = CountMethod::FullEnumeration;
  double elapsed_seconds = 0.0;
  // CharacterIdentity only: distance of the reconstruction from the integer
  double residual = 0.0;
  // fourth_moment only
  double bound = 0.0;
  double ratio = 0.0;
  std::vector<std::string> flags;
};

// Exact number of integer solutions in the box. SolveLast enumerates all but
// the first coordinate and isolates integer roots of the remaining univariate
// equation by divisor scan of its constant term, restricted to the interval.
// coordinates_out, when given, collects the coordinate values of solutions.
CountResult count_points(const HypersurfaceSpec& spec, const Box& box, CountMethod strategy,
                         int64_t budget = kDefaultBudget, int workers = 1,
                         std::set<int64_t>* coordinates_out = nullptr);

// Number of tuples in the box with every gcd(x_i, q) = 1 satisfying the
// congruence mod q, by per-coordinate residue class reduction.
CountResult count_congruence(const HypersurfaceSpec& spec, const Box& box,
                             const FactoredModulus& q, int64_t budget = kDefaultBudget);

// Same count recovered through the complete character identity
//   T = (q phi(q))^{-1} sum_lambda sum_chi conj(G(chi, lambda)) chi(a)
//        prod_i S_i(chi, lambda),
// rounded to the nearest integer. Requires gcd(a, q) = 1 and m = 1; residuals
// of 0.5 or more throw ResidualTooLarge, 1e-3 or more set a warning flag.
CountResult reconstruct_congruence_count(const HypersurfaceSpec& spec, const Box& box,
                                         const FactoredModulus& q,
                                         int64_t budget = kDefaultBudget);

// W(q, h) = #{(w, x, y, z) in (u, u+h]^4, all coprime to q, wx = yz mod q},
// compared against h^4/q + h^2 (the o(1) term set to zero).
CountResult fourth_moment(int64_t q, int64_t u, int64_t h, int64_t budget = kDefaultBudget);

// Ordered factorizations of z into n factors from (u, u+h].
bigint divisor_tuples(int64_t u, int64_t h, int n, const bigint& z);

struct ModulusChoice {
  FactoredModulus q;
  double kept_fraction = 0.0;
  std::vector<std::string> flags;
};

// Modulus from P_r(Q) maximizing the fraction of S coprime to it; ties go to
// the smallest modulus. Fractions below 1/2 are flagged.
ModulusChoice select_modulus(const std::vector<int64_t>& S, double Q, int r,
                             const std::vector<int64_t>& k_list, PrimeSelectionMode mode);

// Size of { x_1^d + ... + x_n^d : x_i in (u, u+h] }.
int64_t value_set_size(int d, int n, int64_t u, int64_t h, int64_t budget = kDefaultBudget);

}  // namespace mhcount
