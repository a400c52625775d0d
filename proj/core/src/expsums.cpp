#include "mhcount/expsums.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "mhcount/summation.hpp"

namespace mhcount {

namespace {

void require_interval(int64_t h) {
  if (h < 0) throw BadRange("interval length must be >= 0");
}

// residue of u + 1 + i mod q without overflow
int64_t shifted_residue(int64_t u_mod, int64_t i, int64_t q) {
  return static_cast<int64_t>(
      (static_cast<unsigned __int128>(u_mod) + 1 + static_cast<unsigned __int128>(i)) %
      static_cast<unsigned __int128>(q));
}

double finish_ratio(SumReport& rep) {
  rep.magnitude = std::abs(rep.value);
  rep.ratio = rep.bound > 0 ? rep.magnitude / rep.bound : 0.0;
  return rep.ratio;
}

}  // namespace

std::complex<double> incomplete_mixed_sum(const Character& chi, int64_t k,
                                          const IntegerPolynomial& f, int64_t lambda,
                                          int64_t u, int64_t h, int workers) {
  require_interval(h);
  if (h == 0) return {0.0, 0.0};
  const int64_t q = chi.table()->modulus_value();
  const Character chik = chi.power(k);
  const ReducedPolynomial fq(f, q);
  const RootOfUnityTable additive(q);
  const int64_t lam = normalize_mod(lambda, q);
  const int64_t u_mod = normalize_mod(u, q);

  return blocked_complex_sum(h, workers, [&](int64_t i) -> std::complex<double> {
    const int64_t x = shifted_residue(u_mod, i, q);
    const int64_t t = chik.root_index(x);
    if (t < 0) return {0.0, 0.0};
    const int64_t phase = static_cast<int64_t>(mul_mod(
        static_cast<uint64_t>(lam), static_cast<uint64_t>(fq.eval(x)), static_cast<uint64_t>(q)));
    return chik.table()->unit_root(t) * additive.at(phase);
  });
}

std::complex<double> gauss_sum(const Character& chi, int64_t lambda, int workers) {
  const int64_t q = chi.table()->modulus_value();
  return incomplete_mixed_sum(chi, 1, IntegerPolynomial::power(1), lambda, 0, q, workers);
}

namespace {

// c_q(lambda) = mu(q/g) phi(q) / phi(q/g) with g = gcd(lambda, q); for
// square-free q this is mu(q/g) phi(g).
int64_t ramanujan_closed_form(const std::vector<int64_t>& primes, int64_t lambda) {
  int64_t q = 1;
  for (int64_t p : primes) q *= p;
  const int64_t g = std::gcd(normalize_mod(lambda, q), q);
  int64_t phi_g = 1;
  int sign = 1;
  for (int64_t p : primes) {
    if (g % p == 0)
      phi_g *= p - 1;
    else
      sign = -sign;
  }
  return sign * phi_g;
}

}  // namespace

int64_t ramanujan_sum(const FactoredModulus& q, int64_t lambda) {
  std::vector<int64_t> primes;
  for (const auto& f : q.factors()) {
    if (f.exponent != 1) throw BadRange("ramanujan_sum: modulus must be square-free");
    primes.push_back(f.prime);
  }
  return ramanujan_closed_form(primes, lambda);
}

int64_t ramanujan_sum(int64_t q, int64_t lambda) {
  if (q < 1) throw BadRange("ramanujan_sum: q must be >= 1");
  std::vector<int64_t> primes;
  int64_t m = q;
  for (int64_t p = 2; p * p <= m; ++p) {
    if (m % p != 0) continue;
    m /= p;
    if (m % p == 0) throw BadRange("ramanujan_sum: q must be square-free");
    primes.push_back(p);
  }
  if (m > 1) primes.push_back(m);
  return ramanujan_closed_form(primes, lambda);
}

std::complex<double> exp_sum(const RationalExpPolynomial& G, int64_t H, int workers) {
  require_interval(H);
  return blocked_complex_sum(H, workers, [&](int64_t i) -> std::complex<double> {
    const auto [num, den] = G.phase_mod1(bigint(i + 1));
    const double phase = num.convert_to<double>() / den.convert_to<double>();
    const double angle = 2.0 * std::numbers::pi * phase;
    return {std::cos(angle), std::sin(angle)};
  });
}

SumReport linear_quadratic_bound(const IntegerPolynomial& G, int64_t H, int64_t q,
                                 int workers) {
  if (H < 1) throw BadRange("linear_quadratic_bound: H must be >= 1");
  if (q < 2) throw BadRange("linear_quadratic_bound: q must be >= 2");
  const int d = G.degree();
  if (d != 1 && d != 2)
    throw DegreeUnsupported("linear_quadratic_bound: degree must be 1 or 2");
  if (boost::multiprecision::gcd(G.leading() < 0 ? bigint(-G.leading()) : G.leading(),
                                 bigint(q)) != 1)
    throw DegenerateInput("linear_quadratic_bound: leading coefficient shares a factor with q");

  const ReducedPolynomial Gq(G, q);
  const RootOfUnityTable additive(q);
  SumReport rep;
  rep.value = blocked_complex_sum(H, workers, [&](int64_t i) -> std::complex<double> {
    return additive.at(Gq.eval(static_cast<int64_t>((i + 1) % q)));
  });
  const double qd = static_cast<double>(q);
  rep.bound = d == 1 ? qd
                     : static_cast<double>(H) / std::sqrt(qd) + std::sqrt(qd) * std::log(qd);
  rep.params["degree"] = d;
  rep.params["q"] = qd;
  rep.params["H"] = static_cast<double>(H);
  finish_ratio(rep);
  return rep;
}

SumReport wooley_report(const RationalExpPolynomial& G, int64_t H, int j, int workers) {
  if (H < 1) throw BadRange("wooley_report: H must be >= 1");
  const int s = G.degree();
  if (s < 3) throw DegreeUnsupported("wooley_report: degree must be >= 3");
  if (j < 2 || j > s) throw BadIndex("wooley_report: j must lie in [2, degree]");

  const double qj = G.denominator_of(j).convert_to<double>();
  const double sigma = 1.0 / (2.0 * (s - 1) * (s - 2));
  const double Hd = static_cast<double>(H);

  SumReport rep;
  rep.value = exp_sum(G, H, workers);
  rep.bound = Hd * std::pow(1.0 / qj + 1.0 / Hd + qj / std::pow(Hd, j), sigma);
  rep.params["sigma"] = sigma;
  rep.params["s"] = s;
  rep.params["j"] = j;
  rep.params["q_j"] = qj;
  finish_ratio(rep);
  return rep;
}

SumReport weil_report(int64_t p, const Character& chi, int64_t lambda,
                      const IntegerPolynomial& F, int64_t u, int64_t h, int workers) {
  if (h < 1) throw BadRange("weil_report: h must be >= 1");
  const auto& fd = chi.table()->factor_data();
  if (fd.size() != 1 || fd[0].exponent != 1 || fd[0].prime != p)
    throw BadRange("weil_report: character must live mod the prime p");
  const int64_t lam = normalize_mod(lambda, p);
  const ReducedPolynomial Fp(F, p);
  if (chi.is_principal() && lam == 0)
    throw DegenerateInput("weil_report: principal character with zero frequency");
  if (Fp.degree_mod() < 2)
    throw DegenerateInput("weil_report: F must be nonlinear mod p");

  SumReport rep;
  rep.value = incomplete_mixed_sum(chi, 1, F, lam, u, h, workers);
  const double pd = static_cast<double>(p);
  rep.bound = std::sqrt(pd) * std::log(pd);
  rep.params["p"] = pd;
  rep.params["h"] = static_cast<double>(h);
  rep.params["deg_mod_p"] = Fp.degree_mod();
  if (h < p) rep.flags.push_back("out-of-regime");
  finish_ratio(rep);
  return rep;
}

SumReport pure_sum_report(const Character& psi,
                          const std::vector<std::pair<bigint, int64_t>>& roots,
                          int64_t u, int64_t h, int workers) {
  if (h < 1) throw BadRange("pure_sum_report: h must be >= 1");
  if (roots.empty()) throw BadRange("pure_sum_report: needs at least one root");
  const auto& table = psi.table();
  if (table->modulus().kind() != ModulusKind::SquareFree)
    throw BadRange("pure_sum_report: modulus must be square-free");
  const auto& fd = table->factor_data();
  const size_t s = fd.size();
  const int64_t ell = fd.back().prime;
  if (psi.exponents().back() == 0)
    throw DegenerateInput("pure_sum_report: component at the largest prime is principal");

  const int64_t t = psi.order();
  int64_t g = t;
  for (const auto& [v, d] : roots) {
    (void)v;
    if (d == 0) throw BadRange("pure_sum_report: multiplicities must be nonzero");
    g = std::gcd(g, d < 0 ? -d : d);
  }
  if (g != 1)
    throw OrderConditionViolated("pure_sum_report: gcd of multiplicities and order exceeds 1");

  const int64_t q = table->modulus_value();
  std::vector<Character> powers;
  std::vector<int64_t> shifts;
  powers.reserve(roots.size());
  for (const auto& [v, d] : roots) {
    powers.push_back(psi.power(d));
    shifts.push_back(normalize_mod(v, q));
  }

  const int64_t u_mod = normalize_mod(u, q);
  SumReport rep;
  rep.value = blocked_complex_sum(h, workers, [&](int64_t i) -> std::complex<double> {
    const int64_t x = shifted_residue(u_mod, i, q);
    std::complex<double> prod{1.0, 0.0};
    for (size_t m = 0; m < powers.size(); ++m) {
      const int64_t idx = powers[m].root_index(normalize_mod(x - shifts[m], q));
      if (idx < 0) return {0.0, 0.0};
      prod *= table->unit_root(idx);
    }
    return prod;
  });

  // product of pairwise root differences; a zero difference degenerates the
  // bound to 4h exactly as the statement does
  bigint delta = 1;
  for (size_t i = 0; i < roots.size(); ++i)
    for (size_t jj = 0; jj < i; ++jj) delta *= roots[i].first - roots[jj].first;
  const int64_t gd = delta == 0
                         ? ell
                         : static_cast<int64_t>(boost::multiprecision::gcd(
                               delta < 0 ? bigint(-delta) : delta, bigint(ell)));
  rep.bound = 4.0 * static_cast<double>(h) *
              std::pow(static_cast<double>(gd) / static_cast<double>(ell),
                       std::pow(2.0, -static_cast<double>(s)));
  rep.params["s"] = static_cast<double>(s);
  rep.params["ell_s"] = static_cast<double>(ell);
  rep.params["delta_gcd"] = static_cast<double>(gd);
  rep.params["order"] = static_cast<double>(t);

  const int64_t min_ell = fd.front().prime;
  if (fd.back().prime > 2 * min_ell) rep.flags.push_back("factor-spread");
  if (static_cast<double>(h) < std::pow(2.0 * static_cast<double>(min_ell), 2.25))
    rep.flags.push_back("out-of-regime");
  finish_ratio(rep);
  return rep;
}

SumReport mixed_squarefree_report(const Character& chi, const RationalExpPolynomial& F,
                                  double Q, int64_t u, int64_t h, int workers) {
  if (h < 1) throw BadRange("mixed_squarefree_report: h must be >= 1");
  if (!(Q >= 3)) throw BadRange("mixed_squarefree_report: Q must be >= 3");
  const auto& table = chi.table();
  if (table->modulus().kind() != ModulusKind::SquareFree)
    throw BadRange("mixed_squarefree_report: modulus must be square-free");
  if (chi.is_principal())
    throw DegenerateInput("mixed_squarefree_report: character must be non-principal");
  for (const auto& f : table->factor_data())
    if (static_cast<double>(f.prime) < Q || static_cast<double>(f.prime) > 2 * Q)
      throw BadRange("mixed_squarefree_report: prime factor outside [Q, 2Q]");

  const size_t r = table->factor_data().size();
  const int d = std::max(F.degree(), 0);
  const double gamma = 1.0 / (std::pow(2.0, static_cast<double>(r) + 1) * (d + 1) * (d + 2));

  const int64_t q = table->modulus_value();
  const int64_t u_mod = normalize_mod(u, q);
  SumReport rep;
  rep.value = blocked_complex_sum(h, workers, [&](int64_t i) -> std::complex<double> {
    const int64_t t = chi.root_index(shifted_residue(u_mod, i, q));
    if (t < 0) return {0.0, 0.0};
    const auto [num, den] = F.phase_mod1(bigint(u) + 1 + i);
    const double angle =
        2.0 * std::numbers::pi * (num.convert_to<double>() / den.convert_to<double>());
    return table->unit_root(t) * std::complex<double>(std::cos(angle), std::sin(angle));
  });

  rep.bound = static_cast<double>(h) * std::pow(Q, -gamma);
  rep.params["gamma"] = gamma;
  rep.params["r"] = static_cast<double>(r);
  rep.params["d"] = d;
  rep.params["Q"] = Q;
  if (static_cast<double>(h) < std::pow(2.0 * Q, 2.25)) rep.flags.push_back("out-of-regime");
  finish_ratio(rep);
  return rep;
}

}  // namespace mhcount
