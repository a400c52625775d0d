#include "mhcount/postnikov.hpp"

#include <cmath>

namespace mhcount {

int64_t PostnikovPolynomial::eval_mod_q(int64_t Z) const {
  const uint64_t uq = static_cast<uint64_t>(q);
  uint64_t acc = 0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
    acc = mul_mod(acc, static_cast<uint64_t>(normalize_mod(Z, q)), uq);
    acc = (acc + static_cast<uint64_t>(*it)) % uq;
  }
  // coeffs are A_1..A_{r-1}: one more multiplication closes Horner at Z^1
  acc = mul_mod(acc, static_cast<uint64_t>(normalize_mod(Z, q)), uq);
  return static_cast<int64_t>(acc);
}

PostnikovPolynomial build_postnikov(const Character& chi) {
  const auto& table = chi.table();
  const auto& fd = table->factor_data();
  if (fd.size() != 1) throw BadRange("build_postnikov: character must live mod a prime power");
  const int64_t p = fd[0].prime;
  const int r = fd[0].exponent;
  const int64_t q = fd[0].prime_power;
  if (p <= r) throw PrecisionUnavailable("build_postnikov: requires p > r");

  PostnikovPolynomial F;
  F.p = p;
  F.r = r;
  F.q = q;
  F.source_exponent = chi.exponents()[0];
  if (r == 1) return F;

  const int64_t pr1 = q / p;  // p^{r-1}
  const uint64_t upr1 = static_cast<uint64_t>(pr1);

  // dlog(1 + p) = (p - 1) dprime with gcd(dprime, p) = 1, since 1 + p
  // generates the full order-p^{r-1} block of the unit group
  const uint32_t d = fd[0].dlog[static_cast<size_t>(1 + p)];
  if (d % static_cast<uint32_t>(p - 1) != 0)
    throw Error("build_postnikov: discrete log of 1+p not divisible by p-1");
  const int64_t dprime = static_cast<int64_t>(d) / (p - 1);

  // L(p) = p * beta with beta = sum (-1)^{k+1} p^{k-1} / k, a unit mod p^{r-1}
  uint64_t beta = 0;
  uint64_t pk = 1;  // p^{k-1} mod p^{r-1}
  for (int k = 1; k <= r - 1; ++k) {
    const uint64_t invk = static_cast<uint64_t>(mod_inverse(k, pr1));
    const uint64_t term = mul_mod(pk, invk, upr1);
    beta = k % 2 == 1 ? (beta + term) % upr1 : (beta + upr1 - term) % upr1;
    pk = mul_mod(pk, static_cast<uint64_t>(p), upr1);
  }

  // scale theta(mu) = mu * base solves e(theta L(p)/q) = chi(1 + p); kept as
  // an exact product so exponent doubling doubles every coefficient mod q
  const uint64_t base =
      mul_mod(static_cast<uint64_t>(dprime),
              static_cast<uint64_t>(mod_inverse(static_cast<int64_t>(beta), pr1)), upr1);
  const uint64_t mu = static_cast<uint64_t>(F.source_exponent);
  const uint64_t uq = static_cast<uint64_t>(q);
  const uint64_t theta = mul_mod(mu % uq, base, uq);

  F.coeffs.resize(static_cast<size_t>(r - 1));
  for (int k = 1; k <= r - 1; ++k) {
    uint64_t a = mul_mod(theta, static_cast<uint64_t>(mod_inverse(k, q)), uq);
    if (k % 2 == 0) a = (uq - a) % uq;
    F.coeffs[static_cast<size_t>(k - 1)] = static_cast<int64_t>(a);
    if (a % static_cast<uint64_t>(p) == 0) F.unit_coefficients = false;
  }
  return F;
}

double verify_postnikov(const PostnikovPolynomial& F, const Character& chi) {
  const auto& fd = chi.table()->factor_data();
  if (fd.size() != 1 || fd[0].prime != F.p || fd[0].exponent != F.r)
    throw BadRange("verify_postnikov: polynomial and character moduli differ");
  const int64_t p = F.p;
  const int64_t q = F.q;
  const int64_t shifts = q / p;  // p^{r-1}
  const RootOfUnityTable additive(q);

  double max_dev = 0.0;
  for (int64_t y = 1; y < q; ++y) {
    if (y % p == 0) continue;
    const int64_t w = mod_inverse(y, q);
    const std::complex<double> chi_y = chi(y);
    const uint64_t pw = mul_mod(static_cast<uint64_t>(p), static_cast<uint64_t>(w),
                                static_cast<uint64_t>(q));
    for (int64_t z = 0; z < shifts; ++z) {
      const int64_t lhs_arg = static_cast<int64_t>(
          (static_cast<uint64_t>(y) +
           mul_mod(static_cast<uint64_t>(p), static_cast<uint64_t>(z), static_cast<uint64_t>(q))) %
          static_cast<uint64_t>(q));
      const std::complex<double> lhs = chi(lhs_arg);
      const int64_t Z = static_cast<int64_t>(
          mul_mod(pw, static_cast<uint64_t>(z), static_cast<uint64_t>(q)));
      const std::complex<double> rhs = chi_y * additive.at(F.eval_mod_q(Z));
      max_dev = std::max(max_dev, std::abs(lhs - rhs));
    }
  }
  return max_dev;
}

SumReport prime_power_mixed_sum(int64_t p, int r, const IntegerPolynomial& f,
                                int64_t lambda, int64_t mu, int64_t u, int64_t h,
                                int workers) {
  if (r < 1) throw BadRange("prime_power_mixed_sum: r must be >= 1");
  const auto modulus = FactoredModulus::prime_power(p, r);
  const int64_t q = modulus.value();
  const int64_t phi = euler_phi(modulus);
  if (lambda < 0 || lambda >= q)
    throw BadRange("prime_power_mixed_sum: lambda must lie in [0, p^r)");
  if (mu < 0 || mu >= phi)
    throw BadRange("prime_power_mixed_sum: mu must lie in [0, phi(p^r))");
  if (lambda + mu == 0)
    throw BadRange("prime_power_mixed_sum: lambda and mu must not both vanish");
  if (f.degree() < r)
    throw DegreeUnsupported("prime_power_mixed_sum: deg f must be >= r");
  if (normalize_mod(f.leading(), p) == 0)
    throw DegenerateInput("prime_power_mixed_sum: leading coefficient divisible by p");
  if (h < 1) throw BadRange("prime_power_mixed_sum: h must be >= 1");

  const auto table = build_character_table(modulus);

  SumReport rep;
  rep.value = incomplete_mixed_sum(table->generator(), mu, f, lambda, u, h, workers);
  const double rd = static_cast<double>(r);
  rep.bound = std::pow(static_cast<double>(h), 1.0 - 1.0 / (4.0 * rd * rd));

  const auto ord_lambda = p_adic_order(bigint(lambda), p);
  const auto ord_mu = p_adic_order(bigint(mu), p);
  int64_t m = 0;
  if (ord_lambda && ord_mu)
    m = std::min(*ord_lambda, *ord_mu);
  else
    m = ord_lambda ? *ord_lambda : *ord_mu;
  rep.params["m"] = static_cast<double>(m);
  rep.params["H"] = static_cast<double>(h / p);
  rep.params["p"] = static_cast<double>(p);
  rep.params["r"] = rd;

  const bigint p3 = bigint(p) * p * p;
  if (!(bigint(q) >= bigint(h) && bigint(h) >= p3)) rep.flags.push_back("out-of-regime");
  if (p <= r) rep.flags.push_back("postnikov-unavailable");
  rep.magnitude = std::abs(rep.value);
  rep.ratio = rep.bound > 0 ? rep.magnitude / rep.bound : 0.0;
  return rep;
}

}  // namespace mhcount
