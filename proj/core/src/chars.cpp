#include "mhcount/chars.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

namespace mhcount {

namespace {

constexpr int64_t kMaxUnitTable = int64_t(1) << 22;
constexpr int64_t kMaxBlockOrder = int64_t(1) << 26;  // per-factor phi cap

std::vector<int64_t> prime_factors_of(int64_t n) {
  std::vector<int64_t> out;
  for (int64_t p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    out.push_back(p);
    while (n % p == 0) n /= p;
  }
  if (n > 1) out.push_back(n);
  return out;
}

// Smallest primitive root mod p.
int64_t primitive_root_mod_p(int64_t p) {
  if (p == 3) return 2;
  const auto factors = prime_factors_of(p - 1);
  for (int64_t g = 2; g < p; ++g) {
    bool ok = true;
    for (int64_t ell : factors) {
      if (pow_mod(static_cast<uint64_t>(g), static_cast<uint64_t>((p - 1) / ell),
                  static_cast<uint64_t>(p)) == 1) {
        ok = false;
        break;
      }
    }
    if (ok) return g;
  }
  throw Error("primitive_root_mod_p: no generator found");  // unreachable for prime p
}

int64_t checked_lcm(int64_t a, int64_t b) {
  int64_t g = std::gcd(a, b);
  unsigned __int128 l = static_cast<unsigned __int128>(a / g) * static_cast<unsigned __int128>(b);
  if (l > static_cast<unsigned __int128>(INT64_MAX))
    throw ModulusTooLarge("unit order exceeds 2^63");
  return static_cast<int64_t>(l);
}

}  // namespace

RootOfUnityTable::RootOfUnityTable(int64_t order) : order_(order) {
  if (order < 1) throw BadRange("RootOfUnityTable: order must be >= 1");
  if (order <= kMaxUnitTable) {
    table_.resize(static_cast<size_t>(order));
    const double step = 2.0 * std::numbers::pi / static_cast<double>(order);
    for (int64_t t = 0; t < order; ++t)
      table_[static_cast<size_t>(t)] =
          std::complex<double>(std::cos(step * static_cast<double>(t)),
                               std::sin(step * static_cast<double>(t)));
  }
}

std::complex<double> RootOfUnityTable::at(int64_t t) const {
  if (!table_.empty()) return table_[static_cast<size_t>(t)];
  const double angle =
      2.0 * std::numbers::pi * (static_cast<double>(t) / static_cast<double>(order_));
  return {std::cos(angle), std::sin(angle)};
}

CharacterTable::CharacterTable(FactoredModulus q, std::vector<FactorData> factors,
                               int64_t unit_order)
    : q_(std::move(q)), factors_(std::move(factors)), unit_order_(unit_order),
      roots_(unit_order) {
  group_order_ = 1;
  for (const auto& f : factors_) group_order_ *= f.phi;
}

std::shared_ptr<const CharacterTable> CharacterTable::build(const FactoredModulus& q) {
  std::vector<FactorData> data;
  data.reserve(q.factors().size());
  for (const auto& fac : q.factors()) {
    FactorData f;
    f.prime = fac.prime;
    f.exponent = fac.exponent;
    f.prime_power = 1;
    for (int i = 0; i < fac.exponent; ++i) f.prime_power *= fac.prime;
    f.phi = (f.prime_power / fac.prime) * (fac.prime - 1);
    if (f.phi > kMaxBlockOrder)
      throw ModulusTooLarge("build_character_table: factor block too large");

    int64_t g = primitive_root_mod_p(f.prime);
    if (fac.exponent >= 2) {
      // g + p when g^(p-1) = 1 mod p^2, so g generates units mod every p^e
      const uint64_t p2 = static_cast<uint64_t>(f.prime) * static_cast<uint64_t>(f.prime);
      if (pow_mod(static_cast<uint64_t>(g), static_cast<uint64_t>(f.prime - 1), p2) == 1)
        g += f.prime;
    }
    f.root = g;

    f.dlog.assign(static_cast<size_t>(f.prime_power), kNoLog);
    uint64_t x = 1;
    for (int64_t i = 0; i < f.phi; ++i) {
      f.dlog[static_cast<size_t>(x)] = static_cast<uint32_t>(i);
      x = mul_mod(x, static_cast<uint64_t>(g), static_cast<uint64_t>(f.prime_power));
    }
    data.push_back(std::move(f));
  }

  int64_t L = 1;
  for (const auto& f : data) L = checked_lcm(L, f.phi);
  for (auto& f : data) f.unit_scale = L / f.phi;

  return std::shared_ptr<const CharacterTable>(new CharacterTable(q, std::move(data), L));
}

Character CharacterTable::principal() const {
  return Character(shared_from_this(), std::vector<int64_t>(factors_.size(), 0));
}

Character CharacterTable::character(std::vector<int64_t> exponents) const {
  return Character(shared_from_this(), std::move(exponents));
}

Character CharacterTable::character_at(int64_t index) const {
  if (index < 0 || index >= group_order_)
    throw BadIndex("character_at: index outside [0, group_order)");
  std::vector<int64_t> mu(factors_.size());
  for (size_t j = 0; j < factors_.size(); ++j) {
    mu[j] = index % factors_[j].phi;
    index /= factors_[j].phi;
  }
  return Character(shared_from_this(), std::move(mu));
}

Character CharacterTable::generator() const {
  return Character(shared_from_this(), std::vector<int64_t>(factors_.size(), 1));
}

Character::Character(CharacterTablePtr table, std::vector<int64_t> exponents)
    : table_(std::move(table)), mu_(std::move(exponents)) {
  if (!table_) throw BadRange("Character: null table");
  const auto& fd = table_->factor_data();
  if (mu_.size() != fd.size())
    throw BadRange("Character: exponent count does not match factor count");
  for (size_t j = 0; j < mu_.size(); ++j) mu_[j] = normalize_mod(mu_[j], fd[j].phi);
}

int64_t Character::root_index(int64_t x) const {
  const auto& fd = table_->factor_data();
  const int64_t L = table_->unit_order();
  int64_t t = 0;
  for (size_t j = 0; j < fd.size(); ++j) {
    const auto& f = fd[j];
    const int64_t r = normalize_mod(x, f.prime_power);
    const uint32_t idx = f.dlog[static_cast<size_t>(r)];
    if (idx == CharacterTable::kNoLog) return -1;
    const int64_t e = static_cast<int64_t>(
        mul_mod(static_cast<uint64_t>(mu_[j]), idx, static_cast<uint64_t>(f.phi)));
    t = static_cast<int64_t>(
        (static_cast<unsigned __int128>(t) +
         static_cast<unsigned __int128>(e) * static_cast<unsigned __int128>(f.unit_scale)) %
        static_cast<unsigned __int128>(L));
  }
  return t;
}

std::complex<double> Character::operator()(int64_t x) const {
  const int64_t t = root_index(x);
  if (t < 0) return {0.0, 0.0};
  return table_->unit_root(t);
}

std::complex<double> Character::operator()(const bigint& x) const {
  return (*this)(normalize_mod(x, table_->modulus_value()));
}

bool Character::is_principal() const {
  return std::all_of(mu_.begin(), mu_.end(), [](int64_t m) { return m == 0; });
}

bool Character::is_primitive() const {
  const auto& fd = table_->factor_data();
  for (size_t j = 0; j < mu_.size(); ++j) {
    if (fd[j].exponent == 1) {
      if (mu_[j] == 0) return false;
    } else {
      // conductor drops below p^e exactly when p divides the exponent
      if (mu_[j] % fd[j].prime == 0) return false;
    }
  }
  return true;
}

int64_t Character::order() const {
  const auto& fd = table_->factor_data();
  int64_t t = 1;
  for (size_t j = 0; j < mu_.size(); ++j) {
    const int64_t component = fd[j].phi / std::gcd(mu_[j], fd[j].phi);
    t = std::lcm(t, component);
  }
  return t;
}

Character Character::power(int64_t k) const {
  const auto& fd = table_->factor_data();
  std::vector<int64_t> mu(mu_.size());
  for (size_t j = 0; j < mu_.size(); ++j) {
    const __int128 prod = static_cast<__int128>(mu_[j]) * static_cast<__int128>(k);
    int64_t r = static_cast<int64_t>(prod % fd[j].phi);
    mu[j] = r < 0 ? r + fd[j].phi : r;
  }
  return Character(table_, std::move(mu));
}

Character Character::times(const Character& other) const {
  if (table_->modulus_value() != other.table_->modulus_value())
    throw BadRange("Character::times: mismatched moduli");
  const auto& fd = table_->factor_data();
  std::vector<int64_t> mu(mu_.size());
  for (size_t j = 0; j < mu_.size(); ++j)
    mu[j] = normalize_mod(mu_[j] + other.mu_[j], fd[j].phi);
  return Character(table_, std::move(mu));
}

CharacterTablePtr build_character_table(const FactoredModulus& q) {
  return CharacterTable::build(q);
}

std::complex<double> eval_character(const Character& chi, int64_t x) { return chi(x); }

int64_t character_order(const Character& chi) { return chi.order(); }

Character conductor_split(const Character& chi, int64_t p) {
  const auto& table = chi.table();
  if (table->modulus().kind() != ModulusKind::SquareFree)
    throw BadRange("conductor_split: modulus must be square-free");
  const auto& fd = table->factor_data();
  if (fd.size() < 2) throw BadRange("conductor_split: needs at least two factors");
  std::vector<int64_t> primes;
  std::vector<int64_t> mu;
  bool found = false;
  for (size_t j = 0; j < fd.size(); ++j) {
    if (fd[j].prime == p) {
      found = true;
      continue;
    }
    primes.push_back(fd[j].prime);
    mu.push_back(chi.exponents()[j]);
  }
  if (!found) throw NotAFactor("conductor_split: p does not divide q");
  auto reduced = build_character_table(FactoredModulus::square_free(std::move(primes)));
  return reduced->character(std::move(mu));
}

Character component_character(const Character& chi, int64_t p) {
  const auto& fd = chi.table()->factor_data();
  for (size_t j = 0; j < fd.size(); ++j) {
    if (fd[j].prime != p) continue;
    auto table = build_character_table(
        fd[j].exponent == 1 ? FactoredModulus::square_free({p})
                            : FactoredModulus::prime_power(p, fd[j].exponent));
    return table->character({chi.exponents()[j]});
  }
  throw NotAFactor("component_character: p does not divide q");
}

}  // namespace mhcount
