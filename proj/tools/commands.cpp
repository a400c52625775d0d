#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <fstream>
#include <iostream>
#include <numbers>
#include <numeric>
#include <random>
#include <sstream>

#include "mhcount/chars.hpp"
#include "mhcount/csv.hpp"
#include "mhcount/expsums.hpp"
#include "mhcount/postnikov.hpp"
#include "mhcount/summation.hpp"

namespace mhtool {

namespace {

using namespace mhcount;
using nlohmann::json;

struct Output {
  std::ofstream file;
  std::ostream* os = &std::cout;

  explicit Output(const std::optional<std::string>& path) {
    if (path) {
      file.open(*path, std::ios::binary);
      if (!file) throw ConfigError("out: cannot open '" + *path + "'");
      os = &file;
    }
  }
};

std::string fmt_elapsed(double seconds, const GlobalOptions& opt) {
  return opt.timing ? CsvWriter::fmt(seconds) : "0";
}

CountMethod parse_strategy(const std::string& s) {
  return s == "solve-last" ? CountMethod::SolveLast : CountMethod::FullEnumeration;
}

std::string join_i64(const std::vector<int64_t>& v) {
  std::vector<std::string> parts;
  for (int64_t x : v) parts.push_back(std::to_string(x));
  return CsvWriter::join(parts);
}

// odd q that is square-free or a prime power; empty otherwise
std::optional<FactoredModulus> representable_modulus(int64_t q) {
  if (q < 3 || q % 2 == 0) return std::nullopt;
  std::vector<int64_t> primes;
  std::vector<int> exps;
  int64_t rest = q;
  for (int64_t p = 3; p * p <= rest; p += 2) {
    if (rest % p) continue;
    int e = 0;
    while (rest % p == 0) rest /= p, ++e;
    primes.push_back(p);
    exps.push_back(e);
  }
  if (rest > 1) primes.push_back(rest), exps.push_back(1);
  if (primes.size() == 1) {
    return exps[0] == 1 ? FactoredModulus::square_free({primes[0]})
                        : FactoredModulus::prime_power(primes[0], exps[0]);
  }
  for (int e : exps)
    if (e != 1) return std::nullopt;
  return FactoredModulus::square_free(primes);
}

// ---- count ------------------------------------------------------------------

int run_count(const ExperimentConfig& cfg, const GlobalOptions& opt) {
  if (!cfg.spec) throw ConfigError("count: config needs 'spec'");
  if (!cfg.boxes) throw ConfigError("count: config needs 'boxes'");
  const CountMethod strategy = parse_strategy(cfg.strategy);

  Output out(opt.out);
  CsvWriter csv(*out.os, "count");
  csv.header({"u", "h", "strategy", "count", "elapsed", "flags"});
  for (const Box& box : *cfg.boxes) {
    const CountResult res = count_points(*cfg.spec, box, strategy, opt.budget, opt.workers);
    csv.row({join_i64(box.u_list), CsvWriter::fmt(box.h), to_string(res.method),
             CsvWriter::fmt(res.count), fmt_elapsed(res.elapsed_seconds, opt),
             CsvWriter::join(res.flags)});
  }
  return 0;
}

// ---- verify -----------------------------------------------------------------

struct SuiteResult {
  int64_t cases = 0;
  int64_t failures = 0;
};

SuiteResult suite_orthogonality() {
  SuiteResult r;
  const double tol = 1e-12;
  for (int64_t q : {3, 5, 7, 9, 11, 15, 21, 25, 27, 33, 35, 49}) {
    const auto table = build_character_table(*representable_modulus(q));
    const int64_t phi = table->group_order();
    std::vector<Character> chars;
    for (int64_t i = 0; i < phi; ++i) chars.push_back(table->character_at(i));

    for (const Character& chi : chars) {
      ComplexSum s;
      for (int64_t x = 0; x < q; ++x) s.add(chi(x));
      const double expected = chi.is_principal() ? static_cast<double>(phi) : 0.0;
      ++r.cases;
      if (std::abs(s.value() - expected) > tol) ++r.failures;
    }
    for (int64_t x = 0; x < q; ++x) {
      ComplexSum s;
      for (const Character& chi : chars) s.add(chi(x));
      const double expected = x == 1 ? static_cast<double>(phi) : 0.0;
      ++r.cases;
      if (std::abs(s.value() - expected) > tol) ++r.failures;
    }
  }
  return r;
}

SuiteResult suite_gauss_magnitude(int workers) {
  SuiteResult r;
  for (int64_t q : {7, 11, 35, 77}) {
    const auto table = build_character_table(*representable_modulus(q));
    for (int64_t i = 0; i < table->group_order(); ++i) {
      const Character chi = table->character_at(i);
      if (!chi.is_primitive()) continue;
      for (int64_t lambda : {int64_t{1}, int64_t{2}, q - 1}) {
        if (std::gcd(lambda, q) != 1) continue;
        const std::complex<double> g = gauss_sum(chi, lambda, workers);
        ++r.cases;
        if (std::abs(std::norm(g) - static_cast<double>(q)) > 1e-6 * static_cast<double>(q))
          ++r.failures;
      }
    }
  }
  return r;
}

bool is_square_free_int(int64_t q) {
  for (int64_t p = 2; p * p <= q; ++p) {
    if (q % p) continue;
    if (q % (p * p) == 0) return false;
    while (q % p == 0) q /= p;
  }
  return true;
}

SuiteResult suite_ramanujan() {
  SuiteResult r;
  for (int64_t q = 1; q <= 120; ++q) {
    if (!is_square_free_int(q)) continue;
    for (int64_t lambda = 1; lambda <= q; ++lambda) {
      const int64_t closed = ramanujan_sum(q, lambda);
      CompensatedSum re, im;
      for (int64_t y = 1; y <= q; ++y) {
        if (std::gcd(y, q) != 1) continue;
        const double angle = 2.0 * std::numbers::pi *
                             static_cast<double>(mul_mod(static_cast<uint64_t>(lambda % q),
                                                         static_cast<uint64_t>(y),
                                                         static_cast<uint64_t>(q))) /
                             static_cast<double>(q);
        re.add(std::cos(angle));
        im.add(std::sin(angle));
      }
      ++r.cases;
      const bool close = std::hypot(re.value() - static_cast<double>(closed), im.value()) < 1e-6;
      const bool magnitude_ok = std::llabs(closed) == euler_phi(std::gcd(lambda, q));
      if (!close || !magnitude_ok) ++r.failures;
    }
  }
  return r;
}

SuiteResult suite_postnikov(bool perturb) {
  SuiteResult r;
  const std::pair<int64_t, int> cases[] = {{3, 2}, {5, 2}, {5, 3}, {7, 2}, {7, 3}};
  for (const auto& [p, rr] : cases) {
    const auto table = build_character_table(FactoredModulus::prime_power(p, rr));
    const int64_t phi = table->group_order();
    const int64_t step = phi <= 32 ? 1 : phi / 32;
    for (int64_t i = 0; i < phi; i += step) {
      const Character chi = table->character_at(i);
      PostnikovPolynomial F = build_postnikov(chi);
      if (perturb && !F.coeffs.empty()) F.coeffs[0] = (F.coeffs[0] + 1) % F.q;
      ++r.cases;
      if (verify_postnikov(F, chi) >= 1e-9) ++r.failures;
    }
  }
  return r;
}

SuiteResult suite_reconstruct(int64_t budget) {
  SuiteResult r;
  const IntegerPolynomial sq{0, 0, 1};
  const IntegerPolynomial cube{0, 0, 0, 1};
  const IntegerPolynomial cube_plus{0, 1, 0, 1};

  struct Instance {
    HypersurfaceSpec spec;
    Box box;
    FactoredModulus q;
  };
  std::vector<Instance> instances;
  auto add = [&](std::vector<IntegerPolynomial> f, std::vector<int64_t> k, int64_t a,
                 FactoredModulus q, int64_t u, int64_t h) {
    HypersurfaceSpec s;
    s.f_list = std::move(f);
    s.k_list = std::move(k);
    s.a = a;
    const Box box = Box::diagonal(u, s.f_list.size(), h);
    instances.push_back({std::move(s), box, std::move(q)});
  };
  add({sq, sq}, {1, 1}, 3, FactoredModulus::square_free({5}), 0, 4);
  add({sq, cube_plus}, {1, 3}, 1, FactoredModulus::square_free({7}), -3, 10);
  add({sq, sq, sq}, {1, 1, 1}, 1, FactoredModulus::prime_power(3, 2), 0, 9);
  add({sq, sq, sq}, {1, 1, 1}, 3, FactoredModulus::square_free({5, 7}), 0, 12);
  add({cube, cube}, {1, 1}, 3, FactoredModulus::prime_power(5, 2), 0, 15);
  add({sq, cube}, {3, 1}, 1, FactoredModulus::square_free({5, 7}), -2, 8);

  for (const auto& inst : instances) {
    const CountResult direct = count_congruence(inst.spec, inst.box, inst.q, budget);
    const CountResult recon = reconstruct_congruence_count(inst.spec, inst.box, inst.q, budget);
    ++r.cases;
    if (recon.count != direct.count || recon.residual >= 1e-3) ++r.failures;
  }
  return r;
}

SuiteResult suite_strategy_equivalence(int64_t budget, int workers) {
  SuiteResult r;
  std::mt19937_64 rng(20260821);
  auto pick = [&](int64_t lo, int64_t hi) {
    return lo + static_cast<int64_t>(rng() % static_cast<uint64_t>(hi - lo + 1));
  };
  const int64_t k_choices[] = {-2, -1, 1, 2, 3};
  for (int iter = 0; iter < 12; ++iter) {
    HypersurfaceSpec spec;
    const int n = static_cast<int>(pick(2, 3));
    for (int i = 0; i < n; ++i) {
      const int deg = static_cast<int>(pick(1, 3));
      std::vector<bigint> coeffs(static_cast<size_t>(deg) + 1);
      for (int j = 0; j <= deg; ++j) coeffs[static_cast<size_t>(j)] = pick(-3, 3);
      while (coeffs.back() == 0) coeffs.back() = pick(-3, 3);
      spec.f_list.emplace_back(std::move(coeffs));
      spec.k_list.push_back(k_choices[pick(0, 4)]);
    }
    spec.a = pick(0, 1) ? pick(1, 6) : -pick(1, 6);
    spec.m = pick(1, 2);
    const Box box = Box::diagonal(pick(-10, 10), static_cast<size_t>(n), pick(5, 20));

    const CountResult full =
        count_points(spec, box, CountMethod::FullEnumeration, budget, workers);
    const CountResult solve = count_points(spec, box, CountMethod::SolveLast, budget, workers);
    ++r.cases;
    if (full.count != solve.count) ++r.failures;
  }
  return r;
}

const std::vector<std::string> kAllSuites = {
    "orthogonality", "gauss-magnitude", "ramanujan",
    "postnikov",     "reconstruct",     "strategy-equivalence"};

int run_verify(const ExperimentConfig& cfg, const GlobalOptions& opt) {
  std::vector<std::string> suites = kAllSuites;
  bool perturb = false;
  if (cfg.verify) {
    perturb = cfg.verify->perturb_postnikov;
    if (!cfg.verify->suites.empty()) suites = cfg.verify->suites;
    for (const auto& s : suites)
      if (std::find(kAllSuites.begin(), kAllSuites.end(), s) == kAllSuites.end())
        throw ConfigError("verify: unknown suite '" + s + "'");
  }

  Output out(opt.out);
  CsvWriter csv(*out.os, "verify");
  csv.header({"suite", "cases", "failures"});
  int64_t total_failures = 0;
  for (const auto& name : suites) {
    SuiteResult r;
    if (name == "orthogonality")
      r = suite_orthogonality();
    else if (name == "gauss-magnitude")
      r = suite_gauss_magnitude(opt.workers);
    else if (name == "ramanujan")
      r = suite_ramanujan();
    else if (name == "postnikov")
      r = suite_postnikov(perturb);
    else if (name == "reconstruct")
      r = suite_reconstruct(opt.budget);
    else
      r = suite_strategy_equivalence(opt.budget, opt.workers);
    total_failures += r.failures;
    csv.row({name, CsvWriter::fmt(r.cases), CsvWriter::fmt(r.failures)});
  }
  return total_failures == 0 ? 0 : 1;
}

// ---- scan-density -----------------------------------------------------------

int run_scan_density(const ExperimentConfig& cfg, const GlobalOptions& opt) {
  if (!cfg.spec) throw ConfigError("scan-density: config needs 'spec'");
  if (!cfg.grid) throw ConfigError("scan-density: config needs 'grid'");
  if (!cfg.scan) throw ConfigError("scan-density: config needs 'scan'");
  const HypersurfaceSpec& spec = *cfg.spec;
  const size_t n = spec.dimension();
  const CountMethod strategy = parse_strategy(cfg.strategy);

  int modulus_r = 0;
  if (cfg.modulus) {
    modulus_r = cfg.modulus->policy
                    ? cfg.modulus->policy->r
                    : static_cast<int>(cfg.modulus->explicit_q->factors().size());
  }
  double reference = 0.0;
  if (cfg.scan->reference == "d(d+1)/2") {
    int64_t d = 0;
    for (const auto& f : spec.f_list) d = std::max(d, static_cast<int64_t>(f.degree()));
    reference = static_cast<double>(d * (d + 1)) / 2.0;
  } else {
    if (!cfg.modulus)
      throw ConfigError("scan-density: reference '" + cfg.scan->reference +
                        "' needs a modulus section for r");
    const double nd = static_cast<double>(n);
    reference = cfg.scan->reference == "n-4r/9" ? nd - 4.0 * modulus_r / 9.0
                                                : nd - modulus_r / 3.0;
  }

  Output out(opt.out);
  CsvWriter csv(*out.os, "scan-density");
  csv.header({"h", "point_count", "congruence_count", "q", "phi_q", "elapsed", "slope",
              "reference_exponent", "flags"});

  double prev_h = 0.0, prev_n = 0.0;
  bool have_prev = false;
  for (int64_t h : cfg.grid->h_values) {
    const Box box = Box::diagonal(cfg.grid->u, n, h);
    std::set<int64_t> coords;
    const CountResult points =
        count_points(spec, box, strategy, opt.budget, opt.workers, &coords);
    double elapsed = points.elapsed_seconds;

    std::vector<std::string> flags;
    std::string congruence_cell, q_cell, phi_cell;
    if (cfg.modulus) {
      FactoredModulus q = FactoredModulus::square_free({3});
      if (cfg.modulus->explicit_q) {
        q = *cfg.modulus->explicit_q;
      } else {
        const auto& pol = *cfg.modulus->policy;
        if (coords.empty()) {
          const auto primes = select_primes(pol.Q, spec.k_list, pol.mode);
          q = enumerate_moduli(primes, pol.r).front();
        } else {
          const std::vector<int64_t> sample(coords.begin(), coords.end());
          ModulusChoice choice =
              select_modulus(sample, pol.Q, pol.r, spec.k_list, pol.mode);
          q = choice.q;
          for (auto& f : choice.flags) flags.push_back(std::move(f));
        }
      }
      const CountResult cong = count_congruence(spec, box, q, opt.budget);
      elapsed += cong.elapsed_seconds;
      congruence_cell = CsvWriter::fmt(cong.count);
      q_cell = CsvWriter::fmt(q.value());
      phi_cell = CsvWriter::fmt(euler_phi(q));

      size_t kept = 0;
      for (int64_t c : coords)
        if (std::gcd(c < 0 ? -c : c, q.value()) == 1) ++kept;
      const bool kept_half = coords.empty() || 2 * kept >= coords.size();
      if (kept_half && points.count > 2 * cong.count)
        flags.push_back("count-exceeds-twice-congruence");
    }

    std::string slope_cell;
    const double nd = points.count.convert_to<double>();
    if (have_prev && prev_n > 0.0 && nd > 0.0 && prev_h > 0.0)
      slope_cell = CsvWriter::fmt((std::log(nd) - std::log(prev_n)) /
                                  (std::log(static_cast<double>(h)) - std::log(prev_h)));
    have_prev = true;
    prev_h = static_cast<double>(h);
    prev_n = nd;

    csv.row({CsvWriter::fmt(h), CsvWriter::fmt(points.count), congruence_cell, q_cell,
             phi_cell, fmt_elapsed(elapsed, opt), slope_cell, CsvWriter::fmt(reference),
             CsvWriter::join(flags)});
  }
  return 0;
}

// ---- charsum ----------------------------------------------------------------

std::string param_str(const std::vector<std::pair<std::string, std::string>>& kv) {
  std::vector<std::string> parts;
  for (const auto& [k, v] : kv) parts.push_back(k + "=" + v);
  return CsvWriter::join(parts);
}

std::string poly_param(const IntegerPolynomial& f) {
  std::vector<std::string> parts;
  for (const auto& c : f.coefficients()) parts.push_back(c.str());
  std::string out;
  for (size_t i = 0; i < parts.size(); ++i) {
    if (i) out += '|';
    out += parts[i];
  }
  return out;
}

RationalExpPolynomial parse_rational_poly(const json& arr, const std::string& where) {
  if (!arr.is_array()) throw ConfigError(where + ": expected an array of [num, den, power]");
  std::vector<RationalTerm> terms;
  for (const auto& t : arr) {
    const auto triple = cfg_int_list(t, where);
    if (triple.size() != 3) throw ConfigError(where + ": expected [num, den, power]");
    terms.push_back({bigint(triple[0]), bigint(triple[1]), static_cast<int>(triple[2])});
  }
  try {
    return RationalExpPolynomial(std::move(terms));
  } catch (const Error& e) {
    throw ConfigError(where + ": " + e.what());
  }
}

std::string rational_param(const RationalExpPolynomial& F) {
  std::string out;
  for (size_t i = 0; i < F.terms().size(); ++i) {
    const auto& t = F.terms()[i];
    if (i) out += '|';
    out += t.numerator.str() + "/" + t.denominator.str() + "x^" + std::to_string(t.power);
  }
  return out;
}

void report_row(CsvWriter& csv, const std::string& op, const std::string& params,
                const SumReport& rep, const GlobalOptions& opt) {
  (void)opt;
  csv.row({op, params, CsvWriter::fmt(rep.value.real()), CsvWriter::fmt(rep.value.imag()),
           CsvWriter::fmt(rep.magnitude), CsvWriter::fmt(rep.bound), CsvWriter::fmt(rep.ratio),
           CsvWriter::join(rep.flags)});
}

int run_charsum(const ExperimentConfig& cfg, const GlobalOptions& opt) {
  if (!cfg.charsum) throw ConfigError("charsum: config needs a 'charsum' section");
  const json& cs = *cfg.charsum;
  if (!cs.contains("op")) throw ConfigError("charsum: needs 'op'");
  const std::string op = cfg_string(cs["op"], "charsum.op");
  const char* known[] = {"gauss-sum",   "ramanujan", "incomplete-mixed-sum",
                         "mixed-squarefree", "prime-power-mixed", "pure-sum",
                         "wooley",      "weil",      "linear-quadratic"};
  if (std::find_if(std::begin(known), std::end(known),
                   [&](const char* k) { return op == k; }) == std::end(known))
    throw ConfigError("charsum: unknown op '" + op + "'");

  Output out(opt.out);
  CsvWriter csv(*out.os, "charsum");
  csv.header({"op", "params", "re", "im", "magnitude", "bound", "ratio", "flags"});

  auto require = [&](const json& obj, const char* key) -> const json& {
    if (!obj.contains(key))
      throw ConfigError("charsum: op '" + op + "' needs '" + key + "'");
    return obj[key];
  };

  if (op == "gauss-sum") {
    check_keys(cs, {"op", "q", "lambda", "chi"}, "charsum");
    const FactoredModulus q = parse_modulus_value(require(cs, "q"), "charsum.q");
    const auto table = build_character_table(q);
    std::vector<int64_t> chi_indices;
    const json& chij = require(cs, "chi");
    if (chij.is_string() && chij.get<std::string>() == "all") {
      for (int64_t i = 0; i < table->group_order(); ++i) chi_indices.push_back(i);
    } else {
      chi_indices.push_back(cfg_int(chij, "charsum.chi"));
    }
    std::vector<int64_t> lambdas;
    const json& lj = require(cs, "lambda");
    if (lj.is_array())
      lambdas = cfg_int_list(lj, "charsum.lambda");
    else
      lambdas.push_back(cfg_int(lj, "charsum.lambda"));

    for (int64_t ci : chi_indices) {
      const Character chi = table->character_at(ci);
      for (int64_t lambda : lambdas) {
        SumReport rep;
        rep.value = gauss_sum(chi, lambda, opt.workers);
        rep.magnitude = std::abs(rep.value);
        rep.bound = std::sqrt(static_cast<double>(q.value()));
        rep.ratio = rep.magnitude / rep.bound;
        if (chi.is_principal()) rep.flags.push_back("principal");
        else if (!chi.is_primitive()) rep.flags.push_back("imprimitive");
        if (std::gcd(lambda % q.value(), q.value()) != 1)
          rep.flags.push_back("lambda-shared-factor");
        report_row(csv, op,
                   param_str({{"q", std::to_string(q.value())},
                              {"chi", std::to_string(ci)},
                              {"lambda", std::to_string(lambda)}}),
                   rep, opt);
      }
    }
    return 0;
  }

  if (op == "ramanujan") {
    check_keys(cs, {"op", "q", "lambda_max"}, "charsum");
    const int64_t q = cfg_int(require(cs, "q"), "charsum.q");
    const int64_t lmax =
        cs.contains("lambda_max") ? cfg_int(cs["lambda_max"], "charsum.lambda_max") : q;
    for (int64_t lambda = 1; lambda <= lmax; ++lambda) {
      const int64_t c = ramanujan_sum(q, lambda);
      SumReport rep;
      rep.value = {static_cast<double>(c), 0.0};
      rep.magnitude = std::abs(static_cast<double>(c));
      rep.bound = static_cast<double>(euler_phi(std::gcd(lambda, q)));
      rep.ratio = rep.bound > 0 ? rep.magnitude / rep.bound : 0.0;
      report_row(csv, op,
                 param_str({{"q", std::to_string(q)}, {"lambda", std::to_string(lambda)}}),
                 rep, opt);
    }
    return 0;
  }

  if (op == "incomplete-mixed-sum") {
    check_keys(cs, {"op", "q", "chi", "k", "f", "lambda", "u", "h"}, "charsum");
    const FactoredModulus q = parse_modulus_value(require(cs, "q"), "charsum.q");
    const auto table = build_character_table(q);
    const Character chi = table->character_at(cfg_int(require(cs, "chi"), "charsum.chi"));
    const int64_t k = cfg_int(require(cs, "k"), "charsum.k");
    const IntegerPolynomial f = parse_polynomial(require(cs, "f"), "charsum.f");
    const int64_t lambda = cfg_int(require(cs, "lambda"), "charsum.lambda");
    const int64_t u = cfg_int(require(cs, "u"), "charsum.u");
    const int64_t h = cfg_int(require(cs, "h"), "charsum.h");
    SumReport rep;
    rep.value = incomplete_mixed_sum(chi, k, f, lambda, u, h, opt.workers);
    rep.magnitude = std::abs(rep.value);
    rep.bound = static_cast<double>(h);
    rep.ratio = h > 0 ? rep.magnitude / rep.bound : 0.0;
    report_row(csv, op,
               param_str({{"q", std::to_string(q.value())},
                          {"chi", std::to_string(cfg_int(cs["chi"], "charsum.chi"))},
                          {"k", std::to_string(k)},
                          {"f", poly_param(f)},
                          {"lambda", std::to_string(lambda)},
                          {"u", std::to_string(u)},
                          {"h", std::to_string(h)}}),
               rep, opt);
    return 0;
  }

  if (op == "mixed-squarefree") {
    check_keys(cs, {"op", "q", "chi", "F", "Q", "u", "h"}, "charsum");
    const FactoredModulus q = parse_modulus_value(require(cs, "q"), "charsum.q");
    const auto table = build_character_table(q);
    const int64_t ci = cfg_int(require(cs, "chi"), "charsum.chi");
    const Character chi = table->character_at(ci);
    const RationalExpPolynomial F = parse_rational_poly(require(cs, "F"), "charsum.F");
    const double Q = cfg_number(require(cs, "Q"), "charsum.Q");
    const int64_t u = cfg_int(require(cs, "u"), "charsum.u");
    const int64_t h = cfg_int(require(cs, "h"), "charsum.h");
    const SumReport rep = mixed_squarefree_report(chi, F, Q, u, h, opt.workers);
    report_row(csv, op,
               param_str({{"q", std::to_string(q.value())},
                          {"chi", std::to_string(ci)},
                          {"F", rational_param(F)},
                          {"Q", CsvWriter::fmt(Q)},
                          {"u", std::to_string(u)},
                          {"h", std::to_string(h)}}),
               rep, opt);
    return 0;
  }

  if (op == "prime-power-mixed") {
    check_keys(cs, {"op", "p", "r", "f", "lambda", "mu", "u", "h"}, "charsum");
    const int64_t p = cfg_int(require(cs, "p"), "charsum.p");
    const int r = static_cast<int>(cfg_int(require(cs, "r"), "charsum.r"));
    const IntegerPolynomial f = parse_polynomial(require(cs, "f"), "charsum.f");
    const int64_t lambda = cfg_int(require(cs, "lambda"), "charsum.lambda");
    const int64_t mu = cfg_int(require(cs, "mu"), "charsum.mu");
    const int64_t u = cfg_int(require(cs, "u"), "charsum.u");
    const int64_t h = cfg_int(require(cs, "h"), "charsum.h");
    const SumReport rep = prime_power_mixed_sum(p, r, f, lambda, mu, u, h, opt.workers);
    report_row(csv, op,
               param_str({{"p", std::to_string(p)},
                          {"r", std::to_string(r)},
                          {"f", poly_param(f)},
                          {"lambda", std::to_string(lambda)},
                          {"mu", std::to_string(mu)},
                          {"u", std::to_string(u)},
                          {"h", std::to_string(h)}}),
               rep, opt);
    return 0;
  }

  if (op == "pure-sum") {
    check_keys(cs, {"op", "q", "chi", "roots", "u", "h"}, "charsum");
    const FactoredModulus q = parse_modulus_value(require(cs, "q"), "charsum.q");
    const auto table = build_character_table(q);
    const int64_t ci = cfg_int(require(cs, "chi"), "charsum.chi");
    const Character chi = table->character_at(ci);
    const json& rj = require(cs, "roots");
    if (!rj.is_array()) throw ConfigError("charsum.roots: expected an array of [v, d]");
    std::vector<std::pair<bigint, int64_t>> roots;
    std::string roots_param;
    for (const auto& e : rj) {
      const auto pair = cfg_int_list(e, "charsum.roots");
      if (pair.size() != 2) throw ConfigError("charsum.roots: expected [v, d]");
      roots.emplace_back(bigint(pair[0]), pair[1]);
      if (!roots_param.empty()) roots_param += '|';
      roots_param += std::to_string(pair[0]) + "^" + std::to_string(pair[1]);
    }
    const int64_t u = cfg_int(require(cs, "u"), "charsum.u");
    const int64_t h = cfg_int(require(cs, "h"), "charsum.h");
    const SumReport rep = pure_sum_report(chi, roots, u, h, opt.workers);
    report_row(csv, op,
               param_str({{"q", std::to_string(q.value())},
                          {"chi", std::to_string(ci)},
                          {"roots", roots_param},
                          {"u", std::to_string(u)},
                          {"h", std::to_string(h)}}),
               rep, opt);
    return 0;
  }

  if (op == "wooley") {
    check_keys(cs, {"op", "F", "H", "j"}, "charsum");
    const RationalExpPolynomial F = parse_rational_poly(require(cs, "F"), "charsum.F");
    const int64_t H = cfg_int(require(cs, "H"), "charsum.H");
    std::vector<int> js;
    const json& jj = require(cs, "j");
    if (jj.is_string() && jj.get<std::string>() == "all") {
      for (int j = 2; j <= F.degree(); ++j) js.push_back(j);
    } else {
      js.push_back(static_cast<int>(cfg_int(jj, "charsum.j")));
    }
    for (int j : js) {
      const SumReport rep = wooley_report(F, H, j, opt.workers);
      report_row(csv, op,
                 param_str({{"F", rational_param(F)},
                            {"H", std::to_string(H)},
                            {"j", std::to_string(j)}}),
                 rep, opt);
    }
    return 0;
  }

  if (op == "weil") {
    check_keys(cs, {"op", "p", "chi", "lambda", "f", "u", "h"}, "charsum");
    const int64_t p = cfg_int(require(cs, "p"), "charsum.p");
    const auto table = build_character_table(FactoredModulus::square_free({p}));
    const int64_t ci = cfg_int(require(cs, "chi"), "charsum.chi");
    const Character chi = table->character_at(ci);
    const int64_t lambda = cfg_int(require(cs, "lambda"), "charsum.lambda");
    const IntegerPolynomial f = parse_polynomial(require(cs, "f"), "charsum.f");
    const int64_t u = cfg_int(require(cs, "u"), "charsum.u");
    const int64_t h = cfg_int(require(cs, "h"), "charsum.h");
    const SumReport rep = weil_report(p, chi, lambda, f, u, h, opt.workers);
    report_row(csv, op,
               param_str({{"p", std::to_string(p)},
                          {"chi", std::to_string(ci)},
                          {"lambda", std::to_string(lambda)},
                          {"f", poly_param(f)},
                          {"u", std::to_string(u)},
                          {"h", std::to_string(h)}}),
               rep, opt);
    return 0;
  }

  if (op == "linear-quadratic") {
    check_keys(cs, {"op", "G", "H", "q"}, "charsum");
    const IntegerPolynomial G = parse_polynomial(require(cs, "G"), "charsum.G");
    const int64_t H = cfg_int(require(cs, "H"), "charsum.H");
    const int64_t q = cfg_int(require(cs, "q"), "charsum.q");
    const SumReport rep = linear_quadratic_bound(G, H, q, opt.workers);
    report_row(csv, op,
               param_str({{"G", poly_param(G)},
                          {"H", std::to_string(H)},
                          {"q", std::to_string(q)}}),
               rep, opt);
    return 0;
  }

  throw ConfigError("charsum: unknown op '" + op + "'");
}

}  // namespace

int cmd_count(const ExperimentConfig& cfg, const GlobalOptions& opt) {
  return run_count(cfg, opt);
}

int cmd_verify(const ExperimentConfig& cfg, const GlobalOptions& opt) {
  return run_verify(cfg, opt);
}

int cmd_scan_density(const ExperimentConfig& cfg, const GlobalOptions& opt) {
  return run_scan_density(cfg, opt);
}

int cmd_charsum(const ExperimentConfig& cfg, const GlobalOptions& opt) {
  return run_charsum(cfg, opt);
}

}  // namespace mhtool
