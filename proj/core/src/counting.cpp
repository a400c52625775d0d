#include "mhcount/counting.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>

#include "mhcount/expsums.hpp"
#include "mhcount/summation.hpp"

namespace mhcount {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

int64_t floor_div(int64_t a, int64_t b) {
  int64_t q = a / b;
  if (a % b != 0 && (a < 0) != (b < 0)) --q;
  return q;
}

// #{x in (u, u+h] : x = rho mod q}
int64_t residue_count(int64_t u, int64_t h, int64_t rho, int64_t q) {
  return floor_div(u + h - rho, q) - floor_div(u - rho, q);
}

// saturating h^n against a cap
bool within_budget(int64_t h, size_t n, int64_t budget) {
  unsigned __int128 w = 1;
  for (size_t i = 0; i < n; ++i) {
    w *= static_cast<unsigned __int128>(h);
    if (w > static_cast<unsigned __int128>(budget)) return false;
  }
  return true;
}

// ---- dense integer polynomials for the univariate solver --------------------

using Poly = std::vector<bigint>;  // constant first

Poly poly_mul(const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly out(a.size() + b.size() - 1, bigint(0));
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

Poly poly_pow(const Poly& base, int64_t m) {
  Poly acc{bigint(1)};
  for (int64_t i = 0; i < m; ++i) acc = poly_mul(acc, base);
  return acc;
}

bigint poly_eval(const Poly& p, const bigint& x) {
  bigint acc = 0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
  return acc;
}

}  // namespace

void HypersurfaceSpec::validate() const {
  if (f_list.size() < 2) throw BadRange("spec: needs at least two coordinates");
  if (k_list.size() != f_list.size())
    throw BadRange("spec: k_list length must match f_list");
  if (a == 0) throw BadRange("spec: a must be nonzero");
  for (int64_t k : k_list)
    if (k == 0) throw BadRange("spec: exponents k_i must be nonzero");
  if (m < 1) throw BadRange("spec: outer power m must be >= 1");
}

Box Box::diagonal(int64_t u, size_t n, int64_t h) {
  Box b;
  b.u_list.assign(n, u);
  b.h = h;
  return b;
}

void Box::validate(size_t n) const {
  if (u_list.size() != n) throw BadRange("box: coordinate count mismatch");
  if (h < 0) throw BadRange("box: h must be >= 0");
  for (int64_t u : u_list) {
    int64_t tmp;
    if (__builtin_add_overflow(u, h, &tmp)) throw BadRange("box: u + h overflows");
  }
}

const char* to_string(CountMethod m) {
  switch (m) {
    case CountMethod::FullEnumeration: return "full-enumeration";
    case CountMethod::SolveLast: return "solve-last";
    case CountMethod::CharacterIdentity: return "character-identity";
    case CountMethod::ResidueClasses: return "residue-classes";
  }
  return "?";
}

namespace {

struct EnumAccumulator {
  bigint count = 0;
  std::set<int64_t> coords;
};

// shared leaf data for both strategies
struct SpecView {
  const HypersurfaceSpec& spec;
  size_t n;
  std::vector<int64_t> pos_exp;  // k_i when k_i > 0, else 0
  std::vector<int64_t> neg_exp;  // |k_i| when k_i < 0, else 0

  explicit SpecView(const HypersurfaceSpec& s) : spec(s), n(s.dimension()) {
    pos_exp.resize(n);
    neg_exp.resize(n);
    for (size_t i = 0; i < n; ++i) {
      pos_exp[i] = s.k_list[i] > 0 ? s.k_list[i] : 0;
      neg_exp[i] = s.k_list[i] < 0 ? -s.k_list[i] : 0;
    }
  }
};

bigint int_pow(int64_t x, int64_t e) {
  bigint acc = 1;
  bigint b = x;
  while (e > 0) {
    if (e & 1) acc *= b;
    b *= b;
    e >>= 1;
  }
  return acc;
}

// depth-first enumeration of coordinates [from, n) with running partials
template <class LeafFn>
void enumerate_tail(const SpecView& v, const Box& box, size_t from, bigint sum, bigint pos,
                    bigint neg, std::vector<int64_t>& current, LeafFn&& leaf) {
  if (from == v.n) {
    leaf(sum, pos, neg, current);
    return;
  }
  const int64_t lo = box.u_list[from] + 1;
  const int64_t hi = box.u_list[from] + box.h;
  for (int64_t x = lo; x <= hi; ++x) {
    if (x == 0) continue;
    current[from] = x;
    enumerate_tail(v, box, from + 1, sum + v.spec.f_list[from].eval(bigint(x)),
                   v.pos_exp[from] ? pos * int_pow(x, v.pos_exp[from]) : pos,
                   v.neg_exp[from] ? neg * int_pow(x, v.neg_exp[from]) : neg, current,
                   leaf);
  }
}

void count_full(const SpecView& v, const Box& box, int workers, EnumAccumulator& out) {
  const int64_t h = box.h;
  if (h == 0) return;
  const int64_t chunk_len =
      std::max<int64_t>(1, (h + static_cast<int64_t>(workers) * 4 - 1) /
                               std::max<int64_t>(1, static_cast<int64_t>(workers) * 4));
  const int64_t nchunks = (h + chunk_len - 1) / chunk_len;
  std::vector<EnumAccumulator> accs(static_cast<size_t>(nchunks));

  parallel_chunks(h, workers, chunk_len, [&](int64_t c, int64_t lo, int64_t hi) {
    EnumAccumulator& acc = accs[static_cast<size_t>(c)];
    std::vector<int64_t> current(v.n, 0);
    for (int64_t i = lo; i < hi; ++i) {
      const int64_t x0 = box.u_list[0] + 1 + i;
      if (x0 == 0) continue;
      current[0] = x0;
      enumerate_tail(
          v, box, 1, v.spec.f_list[0].eval(bigint(x0)),
          v.pos_exp[0] ? int_pow(x0, v.pos_exp[0]) : bigint(1),
          v.neg_exp[0] ? int_pow(x0, v.neg_exp[0]) : bigint(1), current,
          [&](const bigint& sum, const bigint& pos, const bigint& neg,
              const std::vector<int64_t>& coords) {
            bigint lhs = sum;
            if (v.spec.m > 1) lhs = boost::multiprecision::pow(lhs, static_cast<unsigned>(v.spec.m));
            if (lhs * neg == v.spec.a * pos) {
              acc.count += 1;
              acc.coords.insert(coords.begin(), coords.end());
            }
          });
    }
  });

  for (auto& acc : accs) {
    out.count += acc.count;
    out.coords.merge(acc.coords);
  }
}

// Coordinates 1..n-1 are enumerated; the first coordinate is recovered as an
// integer root of P(x) = (f_0(x) + S)^m C_neg x^{e} - a C_pos x^{e'}, with
// candidates restricted to divisors of the constant term inside the interval.
void count_solve_last(const SpecView& v, const Box& box, int workers, EnumAccumulator& out) {
  const int64_t h = box.h;
  if (h == 0) return;

  Poly f0(v.spec.f_list[0].coefficients());
  if (f0.empty()) f0 = {bigint(0)};

  const int64_t lo0 = box.u_list[0] + 1;
  const int64_t hi0 = box.u_list[0] + box.h;

  Box tail_box;
  tail_box.u_list.assign(box.u_list.begin() + 1, box.u_list.end());
  tail_box.h = box.h;

  auto solve_tuple = [&](const bigint& sum, const bigint& pos, const bigint& neg,
                         const std::vector<int64_t>& tail_coords, EnumAccumulator& acc) {
    Poly shifted = f0;
    shifted[0] += sum;  // f_0(x) + S
    Poly lhs = poly_pow(shifted, v.spec.m);
    for (auto& c : lhs) c *= neg;
    if (v.neg_exp[0] > 0) lhs.insert(lhs.begin(), static_cast<size_t>(v.neg_exp[0]), bigint(0));
    const size_t rhs_pow = static_cast<size_t>(v.pos_exp[0]);
    if (lhs.size() < rhs_pow + 1) lhs.resize(rhs_pow + 1, bigint(0));
    lhs[rhs_pow] -= v.spec.a * pos;

    // x = 0 is excluded, so the x^t valuation can be stripped safely
    size_t val = 0;
    while (val < lhs.size() && lhs[val] == 0) ++val;
    if (val == lhs.size()) {
      // the two sides cancel identically: every nonzero x in range solves it
      for (int64_t x = lo0; x <= hi0; ++x) {
        if (x == 0) continue;
        acc.count += 1;
        acc.coords.insert(x);
        acc.coords.insert(tail_coords.begin(), tail_coords.end());
      }
      return;
    }
    Poly reduced(lhs.begin() + static_cast<Poly::difference_type>(val), lhs.end());
    const bigint& c0 = reduced[0];

    for (int64_t x = lo0; x <= hi0; ++x) {
      if (x == 0) continue;
      if (c0 % x != 0) continue;
      if (poly_eval(reduced, bigint(x)) == 0) {
        acc.count += 1;
        acc.coords.insert(x);
        acc.coords.insert(tail_coords.begin(), tail_coords.end());
      }
    }
  };

  // chunk the first enumerated coordinate (index 1)
  const int64_t chunk_len =
      std::max<int64_t>(1, (h + static_cast<int64_t>(workers) * 4 - 1) /
                               std::max<int64_t>(1, static_cast<int64_t>(workers) * 4));
  const int64_t nchunks = (h + chunk_len - 1) / chunk_len;
  std::vector<EnumAccumulator> accs(static_cast<size_t>(nchunks));

  SpecView tail_view(v.spec);  // reuse exponent split; enumeration starts at 1

  parallel_chunks(h, workers, chunk_len, [&](int64_t c, int64_t chlo, int64_t chhi) {
    EnumAccumulator& acc = accs[static_cast<size_t>(c)];
    std::vector<int64_t> current(v.n, 0);
    for (int64_t i = chlo; i < chhi; ++i) {
      const int64_t x1 = box.u_list[1] + 1 + i;
      if (x1 == 0) continue;
      current[1] = x1;
      enumerate_tail(
          tail_view, box, 2, v.spec.f_list[1].eval(bigint(x1)),
          v.pos_exp[1] ? int_pow(x1, v.pos_exp[1]) : bigint(1),
          v.neg_exp[1] ? int_pow(x1, v.neg_exp[1]) : bigint(1), current,
          [&](const bigint& sum, const bigint& pos, const bigint& neg,
              const std::vector<int64_t>& coords) {
            std::vector<int64_t> tail(coords.begin() + 1, coords.end());
            solve_tuple(sum, pos, neg, tail, acc);
          });
    }
  });

  for (auto& acc : accs) {
    out.count += acc.count;
    out.coords.merge(acc.coords);
  }
}

}  // namespace

CountResult count_points(const HypersurfaceSpec& spec, const Box& box, CountMethod strategy,
                         int64_t budget, int workers, std::set<int64_t>* coordinates_out) {
  spec.validate();
  box.validate(spec.dimension());
  if (!within_budget(box.h, spec.dimension(), budget))
    throw BudgetExceeded("count_points: box volume exceeds the evaluation budget");

  const auto start = Clock::now();
  SpecView view(spec);
  EnumAccumulator acc;
  switch (strategy) {
    case CountMethod::FullEnumeration:
      count_full(view, box, workers, acc);
      break;
    case CountMethod::SolveLast:
      count_solve_last(view, box, workers, acc);
      break;
    default:
      throw BadRange("count_points: strategy must be full enumeration or solve-last");
  }

  CountResult res;
  res.count = acc.count;
  res.method = strategy;
  res.elapsed_seconds = seconds_since(start);
  if (coordinates_out) *coordinates_out = std::move(acc.coords);
  return res;
}

CountResult count_congruence(const HypersurfaceSpec& spec, const Box& box,
                             const FactoredModulus& q, int64_t budget) {
  spec.validate();
  box.validate(spec.dimension());
  const auto start = Clock::now();
  const int64_t qv = q.value();
  const int64_t phi = euler_phi(q);
  const size_t n = spec.dimension();
  if (static_cast<double>(n) * static_cast<double>(qv) * static_cast<double>(phi) *
          static_cast<double>(phi) >
      static_cast<double>(budget))
    throw BudgetExceeded("count_congruence: residue table exceeds the budget");

  std::vector<int64_t> units;
  std::vector<int32_t> unit_index(static_cast<size_t>(qv), -1);
  for (int64_t rho = 0; rho < qv; ++rho) {
    if (std::gcd(rho, qv) == 1) {
      unit_index[static_cast<size_t>(rho)] = static_cast<int32_t>(units.size());
      units.push_back(rho);
    }
  }

  struct HistEntry {
    int64_t v;       // f_i(rho) mod q
    int32_t w_idx;   // unit index of rho^{k_i}
    int64_t weight;  // residue multiplicity in the box
  };

  std::vector<std::vector<HistEntry>> hist(n);
  for (size_t i = 0; i < n; ++i) {
    const ReducedPolynomial fq(spec.f_list[i], qv);
    const int64_t k = spec.k_list[i];
    for (int64_t rho : units) {
      const int64_t weight = residue_count(box.u_list[i], box.h, rho, qv);
      if (weight == 0) continue;
      const int64_t base = k > 0 ? rho : mod_inverse(rho, qv);
      const int64_t w = static_cast<int64_t>(
          pow_mod(static_cast<uint64_t>(base), static_cast<uint64_t>(k > 0 ? k : -k),
                  static_cast<uint64_t>(qv)));
      hist[i].push_back({fq.eval(rho), unit_index[static_cast<size_t>(w)], weight});
    }
  }

  // DP over (partial sum mod q, partial product as unit index)
  const size_t states = static_cast<size_t>(qv) * units.size();
  std::vector<bigint> cur(states, bigint(0)), next(states, bigint(0));
  cur[static_cast<size_t>(0) * units.size() + static_cast<size_t>(unit_index[1])] = 1;
  for (size_t i = 0; i < n; ++i) {
    std::fill(next.begin(), next.end(), bigint(0));
    for (int64_t s = 0; s < qv; ++s) {
      for (size_t ti = 0; ti < units.size(); ++ti) {
        const bigint& wgt = cur[static_cast<size_t>(s) * units.size() + ti];
        if (wgt == 0) continue;
        const int64_t t = units[ti];
        for (const auto& e : hist[i]) {
          const int64_t s2 = (s + e.v) % qv;
          const int64_t t2 = static_cast<int64_t>(mul_mod(
              static_cast<uint64_t>(t), static_cast<uint64_t>(units[static_cast<size_t>(e.w_idx)]),
              static_cast<uint64_t>(qv)));
          next[static_cast<size_t>(s2) * units.size() +
               static_cast<size_t>(unit_index[static_cast<size_t>(t2)])] += wgt * e.weight;
        }
      }
    }
    std::swap(cur, next);
  }

  const int64_t a_mod = normalize_mod(spec.a, qv);
  CountResult res;
  res.method = CountMethod::ResidueClasses;
  for (int64_t s = 0; s < qv; ++s) {
    const int64_t lhs = static_cast<int64_t>(pow_mod(
        static_cast<uint64_t>(s), static_cast<uint64_t>(spec.m), static_cast<uint64_t>(qv)));
    for (size_t ti = 0; ti < units.size(); ++ti) {
      const bigint& wgt = cur[static_cast<size_t>(s) * units.size() + ti];
      if (wgt == 0) continue;
      const int64_t rhs = static_cast<int64_t>(mul_mod(static_cast<uint64_t>(a_mod),
                                                       static_cast<uint64_t>(units[ti]),
                                                       static_cast<uint64_t>(qv)));
      if (lhs == rhs) res.count += wgt;
    }
  }
  res.elapsed_seconds = seconds_since(start);
  return res;
}

CountResult reconstruct_congruence_count(const HypersurfaceSpec& spec, const Box& box,
                                         const FactoredModulus& q, int64_t budget) {
  spec.validate();
  box.validate(spec.dimension());
  if (spec.m != 1)
    throw BadRange("reconstruct_congruence_count: the identity requires m = 1");
  const int64_t qv = q.value();
  if (boost::multiprecision::gcd(spec.a < 0 ? bigint(-spec.a) : spec.a, bigint(qv)) != 1)
    throw BadRange("reconstruct_congruence_count: requires gcd(a, q) = 1");
  const int64_t phi = euler_phi(q);
  if (qv * phi > budget)
    throw BudgetExceeded("reconstruct_congruence_count: q phi(q) exceeds the budget");

  const auto start = Clock::now();
  const auto table = build_character_table(q);
  const size_t n = spec.dimension();
  const RootOfUnityTable additive(qv);

  std::vector<int64_t> units;
  for (int64_t rho = 0; rho < qv; ++rho)
    if (std::gcd(rho, qv) == 1) units.push_back(rho);
  const size_t U = units.size();

  // per coordinate: residue multiplicities and f_i values on the units
  std::vector<std::vector<double>> mult(n, std::vector<double>(U));
  std::vector<std::vector<int64_t>> fval(n, std::vector<int64_t>(U));
  for (size_t i = 0; i < n; ++i) {
    const ReducedPolynomial fq(spec.f_list[i], qv);
    for (size_t uidx = 0; uidx < U; ++uidx) {
      mult[i][uidx] =
          static_cast<double>(residue_count(box.u_list[i], box.h, units[uidx], qv));
      fval[i][uidx] = fq.eval(units[uidx]);
    }
  }

  const int64_t a_mod = normalize_mod(spec.a, qv);
  std::vector<ComplexSum> lambda_bucket(static_cast<size_t>(qv) + 1);
  std::vector<std::complex<double>> chi_vals(U);
  std::vector<std::vector<std::complex<double>>> chipow(n,
                                                        std::vector<std::complex<double>>(U));

  for (int64_t ci = 0; ci < phi; ++ci) {
    const Character chi = table->character_at(ci);
    for (size_t uidx = 0; uidx < U; ++uidx) chi_vals[uidx] = chi(units[uidx]);
    for (size_t i = 0; i < n; ++i) {
      const Character chik = chi.power(spec.k_list[i]);
      for (size_t uidx = 0; uidx < U; ++uidx) chipow[i][uidx] = chik(units[uidx]);
    }
    const std::complex<double> chi_a = chi(a_mod);

    for (int64_t lam = 1; lam <= qv; ++lam) {
      ComplexSum gs;
      for (size_t uidx = 0; uidx < U; ++uidx) {
        const int64_t ph = static_cast<int64_t>(mul_mod(static_cast<uint64_t>(lam % qv),
                                                        static_cast<uint64_t>(units[uidx]),
                                                        static_cast<uint64_t>(qv)));
        gs.add(chi_vals[uidx] * additive.at(ph));
      }
      std::complex<double> prod = chi_a;
      for (size_t i = 0; i < n; ++i) {
        ComplexSum si;
        for (size_t uidx = 0; uidx < U; ++uidx) {
          if (mult[i][uidx] == 0.0) continue;
          const int64_t ph = static_cast<int64_t>(mul_mod(static_cast<uint64_t>(lam % qv),
                                                          static_cast<uint64_t>(fval[i][uidx]),
                                                          static_cast<uint64_t>(qv)));
          si.add(mult[i][uidx] * chipow[i][uidx] * additive.at(ph));
        }
        prod *= si.value();
      }
      lambda_bucket[static_cast<size_t>(lam)].add(std::conj(gs.value()) * prod);
    }
  }

  ComplexSum total;
  for (int64_t lam = 1; lam <= qv; ++lam)
    total.add(lambda_bucket[static_cast<size_t>(lam)].value());
  const std::complex<double> value =
      total.value() / (static_cast<double>(qv) * static_cast<double>(phi));

  CountResult res;
  res.method = CountMethod::CharacterIdentity;
  const double rounded = std::round(value.real());
  res.residual = std::hypot(value.real() - rounded, value.imag());
  if (res.residual >= 0.5)
    throw ResidualTooLarge("reconstruct_congruence_count: reconstruction too far from an integer");
  if (res.residual >= 1e-3) res.flags.push_back("residual-warning");
  if (rounded < 0) res.flags.push_back("negative-rounded-count");
  res.count = bigint(static_cast<int64_t>(std::llround(value.real())));
  res.elapsed_seconds = seconds_since(start);
  return res;
}

CountResult fourth_moment(int64_t q, int64_t u, int64_t h, int64_t budget) {
  if (q < 2) throw BadRange("fourth_moment: q must be >= 2");
  if (h < 0) throw BadRange("fourth_moment: h must be >= 0");
  const auto start = Clock::now();

  std::vector<int64_t> units;
  std::vector<int64_t> weight;
  for (int64_t rho = 0; rho < q; ++rho) {
    if (std::gcd(rho, q) != 1) continue;
    const int64_t w = residue_count(u, h, rho, q);
    if (w == 0) continue;
    units.push_back(rho);
    weight.push_back(w);
  }
  if (static_cast<double>(units.size()) * static_cast<double>(units.size()) >
      static_cast<double>(budget))
    throw BudgetExceeded("fourth_moment: unit pair table exceeds the budget");

  std::vector<bigint> pairs(static_cast<size_t>(q), bigint(0));
  for (size_t i = 0; i < units.size(); ++i)
    for (size_t j = 0; j < units.size(); ++j) {
      const int64_t t = static_cast<int64_t>(mul_mod(static_cast<uint64_t>(units[i]),
                                                     static_cast<uint64_t>(units[j]),
                                                     static_cast<uint64_t>(q)));
      pairs[static_cast<size_t>(t)] += bigint(weight[i]) * weight[j];
    }

  CountResult res;
  res.method = CountMethod::ResidueClasses;
  for (const bigint& p : pairs) res.count += p * p;
  const double hd = static_cast<double>(h);
  res.bound = hd * hd * hd * hd / static_cast<double>(q) + hd * hd;
  res.ratio = res.bound > 0 ? res.count.convert_to<double>() / res.bound : 0.0;
  if (h > q) res.flags.push_back("out-of-regime");
  res.elapsed_seconds = seconds_since(start);
  return res;
}

bigint divisor_tuples(int64_t u, int64_t h, int n, const bigint& z) {
  if (u < 0) throw BadRange("divisor_tuples: interval must be positive");
  if (h < 0) throw BadRange("divisor_tuples: h must be >= 0");
  if (n < 1) throw BadRange("divisor_tuples: n must be >= 1");
  if (z < 1) throw BadRange("divisor_tuples: z must be >= 1");
  if (h == 0) return 0;
  const int64_t lo = u + 1;
  const int64_t hi = u + h;

  auto rec = [&](auto&& self, int remaining, const bigint& zz) -> bigint {
    // interval bounds prune: zz must fit between lo^remaining and hi^remaining
    bigint lo_pow = 1, hi_pow = 1;
    for (int i = 0; i < remaining; ++i) {
      lo_pow *= lo;
      hi_pow *= hi;
    }
    if (zz < lo_pow || zz > hi_pow) return 0;
    if (remaining == 1) return (zz >= lo && zz <= hi) ? 1 : 0;
    bigint total = 0;
    for (int64_t d = lo; d <= hi; ++d) {
      if (zz % d != 0) continue;
      total += self(self, remaining - 1, zz / d);
    }
    return total;
  };
  return rec(rec, n, z);
}

ModulusChoice select_modulus(const std::vector<int64_t>& S, double Q, int r,
                             const std::vector<int64_t>& k_list, PrimeSelectionMode mode) {
  if (S.empty()) throw BadRange("select_modulus: S must be nonempty");
  for (int64_t s : S)
    if (s == 0) throw BadRange("select_modulus: S must not contain 0");

  const auto primes = select_primes(Q, k_list, mode);
  const auto moduli = enumerate_moduli(primes, r);

  const FactoredModulus* best = nullptr;
  size_t best_kept = 0;
  for (const auto& q : moduli) {
    size_t kept = 0;
    for (int64_t s : S)
      if (std::gcd(s < 0 ? -s : s, q.value()) == 1) ++kept;
    if (!best || kept > best_kept || (kept == best_kept && q.value() < best->value())) {
      best = &q;
      best_kept = kept;
    }
  }

  ModulusChoice choice{*best, static_cast<double>(best_kept) / static_cast<double>(S.size()), {}};
  if (choice.kept_fraction < 0.5) choice.flags.push_back("kept-fraction-below-half");
  return choice;
}

int64_t value_set_size(int d, int n, int64_t u, int64_t h, int64_t budget) {
  if (d < 1) throw BadRange("value_set_size: d must be >= 1");
  if (n < 1) throw BadRange("value_set_size: n must be >= 1");
  if (h < 0) throw BadRange("value_set_size: h must be >= 0");
  if (h == 0) return 0;

  // multisets of size n from h values
  {
    unsigned __int128 ways = 1;
    for (int i = 1; i <= n; ++i) {
      ways = ways * static_cast<unsigned __int128>(h + n - i) / static_cast<unsigned __int128>(i);
      if (ways > static_cast<unsigned __int128>(budget))
        throw BudgetExceeded("value_set_size: enumeration exceeds the budget");
    }
  }

  std::vector<bigint> powers(static_cast<size_t>(h));
  for (int64_t i = 0; i < h; ++i) powers[static_cast<size_t>(i)] = int_pow(u + 1 + i, d);

  std::set<bigint> values;
  std::vector<size_t> idx;
  auto rec = [&](auto&& self, int remaining, size_t start, const bigint& partial) -> void {
    if (remaining == 0) {
      values.insert(partial);
      return;
    }
    for (size_t i = start; i < powers.size(); ++i)
      self(self, remaining - 1, i, partial + powers[i]);
  };
  rec(rec, n, 0, bigint(0));
  return static_cast<int64_t>(values.size());
}

}  // namespace mhcount
