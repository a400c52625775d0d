#include "mhcount/polynomial.hpp"

#include <algorithm>
#include <sstream>

namespace mhcount {

IntegerPolynomial::IntegerPolynomial(std::vector<bigint> coeffs) : coeffs_(std::move(coeffs)) {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

IntegerPolynomial::IntegerPolynomial(std::initializer_list<int64_t> coeffs) {
  for (int64_t c : coeffs) coeffs_.emplace_back(c);
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

IntegerPolynomial IntegerPolynomial::power(int d) {
  if (d < 0) throw BadRange("IntegerPolynomial::power: d must be >= 0");
  std::vector<bigint> c(static_cast<size_t>(d) + 1, bigint(0));
  c.back() = 1;
  return IntegerPolynomial(std::move(c));
}

const bigint& IntegerPolynomial::leading() const {
  if (coeffs_.empty()) throw BadRange("leading: zero polynomial");
  return coeffs_.back();
}

bigint IntegerPolynomial::eval(const bigint& x) const {
  bigint acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

int64_t IntegerPolynomial::eval_mod(int64_t x, int64_t q) const {
  return ReducedPolynomial(*this, q).eval(normalize_mod(x, q));
}

std::string IntegerPolynomial::to_string() const {
  if (coeffs_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    const bigint& c = coeffs_[static_cast<size_t>(i)];
    if (c == 0) continue;
    if (!first) os << (c > 0 ? " + " : " - ");
    else if (c < 0) os << "-";
    bigint a = c < 0 ? bigint(-c) : c;
    if (a != 1 || i == 0) os << a.str();
    if (i >= 1) os << "X";
    if (i >= 2) os << "^" << i;
    first = false;
  }
  return os.str();
}

ReducedPolynomial::ReducedPolynomial(const IntegerPolynomial& f, int64_t q) : q_(q) {
  if (q < 1) throw BadRange("ReducedPolynomial: modulus must be >= 1");
  coeffs_.reserve(f.coefficients().size());
  for (const bigint& c : f.coefficients()) coeffs_.push_back(normalize_mod(c, q));
}

int64_t ReducedPolynomial::eval(int64_t x) const {
  unsigned __int128 acc = 0;
  const auto uq = static_cast<uint64_t>(q_);
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
    acc = (acc * static_cast<uint64_t>(x) + static_cast<uint64_t>(*it)) % uq;
  return static_cast<int64_t>(acc);
}

int ReducedPolynomial::degree_mod() const {
  for (int i = static_cast<int>(coeffs_.size()) - 1; i >= 0; --i)
    if (coeffs_[static_cast<size_t>(i)] != 0) return i;
  return -1;
}

RationalExpPolynomial::RationalExpPolynomial(std::vector<RationalTerm> terms) {
  for (auto& t : terms) {
    if (t.denominator < 1) throw BadRange("RationalExpPolynomial: denominators must be >= 1");
    if (t.power < 0) throw BadRange("RationalExpPolynomial: powers must be >= 0");
    if (t.numerator == 0) continue;
    bigint g = boost::multiprecision::gcd(
        t.numerator < 0 ? bigint(-t.numerator) : t.numerator, t.denominator);
    t.numerator /= g;
    t.denominator /= g;
    terms_.push_back(std::move(t));
  }
  std::sort(terms_.begin(), terms_.end(),
            [](const RationalTerm& a, const RationalTerm& b) { return a.power < b.power; });
  for (size_t i = 1; i < terms_.size(); ++i)
    if (terms_[i - 1].power == terms_[i].power)
      throw BadRange("RationalExpPolynomial: duplicate powers");
  for (const auto& t : terms_) lcm_den_ = boost::multiprecision::lcm(lcm_den_, t.denominator);
}

int RationalExpPolynomial::degree() const {
  return terms_.empty() ? -1 : terms_.back().power;
}

bigint RationalExpPolynomial::denominator_of(int power) const {
  for (const auto& t : terms_)
    if (t.power == power) return t.denominator;
  return 1;
}

std::pair<bigint, bigint> RationalExpPolynomial::phase_mod1(const bigint& x) const {
  // sum a_i (L / q_i) x^i mod L over the common denominator L
  bigint num = 0;
  for (const auto& t : terms_) {
    bigint xp = 1;
    for (int i = 0; i < t.power; ++i) xp *= x;
    num += t.numerator * (lcm_den_ / t.denominator) * xp;
  }
  num %= lcm_den_;
  if (num < 0) num += lcm_den_;
  return {num, lcm_den_};
}

}  // namespace mhcount
