#include "stransfer/cyclotomic.hpp"

#include <cmath>
#include <numbers>

namespace stransfer {

namespace {

int64_t phi_pk(int64_t p, int k) { return k == 0 ? 1 : modp::pow(p, k - 1) * (p - 1); }

}  // namespace

std::string rational_to_string(const Rational& q) {
  auto num = boost::multiprecision::numerator(q);
  auto den = boost::multiprecision::denominator(q);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

Rational rational_from_string(const std::string& s) {
  auto slash = s.find('/');
  if (slash == std::string::npos) return Rational(BigInt(s));
  return Rational(BigInt(s.substr(0, slash)), BigInt(s.substr(slash + 1)));
}

Rational rational_ppow(int64_t p, int e) {
  BigInt b = 1;
  for (int i = 0; i < std::abs(e); ++i) b *= p;
  return e >= 0 ? Rational(b) : Rational(BigInt(1), b);
}

Cyclotomic::Cyclotomic(int64_t p, const Rational& q) : p_(p) {
  if (q != 0) c_[0] = q;
}

Cyclotomic Cyclotomic::character(const CharacterValue& c, const Rational& coeff) {
  Cyclotomic r(c.prime());
  r.level_ = c.level();
  std::map<int64_t, Rational> raw;
  if (coeff != 0) raw[c.num()] = coeff;
  r.reduce(std::move(raw));
  return r;
}

Cyclotomic Cyclotomic::from_histogram(int64_t p, int level,
                                      const std::vector<Rational>& counts) {
  Cyclotomic r(p);
  r.level_ = level;
  std::map<int64_t, Rational> raw;
  for (size_t j = 0; j < counts.size(); ++j)
    if (counts[j] != 0) raw[static_cast<int64_t>(j) % modp::pow(p, level)] += counts[j];
  r.reduce(std::move(raw));
  return r;
}

Cyclotomic Cyclotomic::from_counts(int64_t p, int level, std::vector<int64_t> counts,
                                   const Rational& scale) {
  const int64_t n = modp::pow(p, level);
  counts.resize(static_cast<size_t>(n), 0);
  // Fold exponents >= phi in integer arithmetic before touching rationals.
  if (level > 0) {
    const int64_t phi = phi_pk(p, level);
    const int64_t step = modp::pow(p, level - 1);
    for (int64_t j = n - 1; j >= phi; --j) {
      if (counts[j] == 0) continue;
      for (int64_t t = 1; t < p; ++t) counts[j - t * step] -= counts[j];
      counts[j] = 0;
    }
  }
  Cyclotomic r(p);
  r.level_ = level;
  std::map<int64_t, Rational> raw;
  for (size_t j = 0; j < counts.size(); ++j)
    if (counts[j] != 0) raw.emplace_hint(raw.end(), static_cast<int64_t>(j), Rational(counts[j]) * scale);
  r.reduce(std::move(raw));
  return r;
}

void Cyclotomic::reduce(std::map<int64_t, Rational> raw) {
  const int k = level_;
  if (k > 0) {
    const int64_t phi = phi_pk(p_, k);
    const int64_t step = modp::pow(p_, k - 1);
    // zeta^j for j >= phi equals -sum_{t=1}^{p-1} zeta^{j - t step}, all below phi.
    for (auto it = raw.lower_bound(phi); it != raw.end(); it = raw.erase(it)) {
      for (int64_t t = 1; t < p_; ++t) raw[it->first - t * step] -= it->second;
    }
  } else {
    std::map<int64_t, Rational> one;
    for (auto& [j, q] : raw) one[0] += q;
    raw = std::move(one);
  }
  for (auto it = raw.begin(); it != raw.end();) it = (it->second == 0) ? raw.erase(it) : std::next(it);
  int lvl = k;
  while (lvl > 0) {
    bool all_div = true;
    for (const auto& [j, q] : raw)
      if (j % p_ != 0) { all_div = false; break; }
    if (!all_div) break;
    std::map<int64_t, Rational> smaller;
    for (auto& [j, q] : raw) smaller.emplace_hint(smaller.end(), j / p_, q);
    raw = std::move(smaller);
    --lvl;
  }
  if (raw.empty()) lvl = 0;
  level_ = lvl;
  c_ = std::move(raw);
}

Cyclotomic Cyclotomic::lifted(int level) const {
  if (level == level_) return *this;
  Cyclotomic r(p_);
  r.level_ = level;
  const int64_t mult = modp::pow(p_, level - level_);
  for (const auto& [j, q] : c_) r.c_.emplace_hint(r.c_.end(), j * mult, q);
  return r;
}

bool Cyclotomic::is_zero() const { return c_.empty(); }

bool Cyclotomic::is_rational() const { return level_ == 0; }

Rational Cyclotomic::rational_part() const {
  auto it = c_.find(0);
  return it == c_.end() ? Rational(0) : it->second;
}

Cyclotomic Cyclotomic::operator+(const Cyclotomic& o) const {
  if (o.is_zero()) return *this;
  if (is_zero()) return o;
  if (p_ != o.p_) throw DomainError("cyclotomic prime mismatch");
  int L = std::max(level_, o.level_);
  Cyclotomic a = lifted(L), b = o.lifted(L);
  for (const auto& [j, q] : b.c_) a.c_[j] += q;
  Cyclotomic r(p_);
  r.level_ = L;
  r.reduce(std::move(a.c_));
  return r;
}

Cyclotomic Cyclotomic::operator-() const {
  Cyclotomic r = *this;
  for (auto& [j, q] : r.c_) q = -q;
  return r;
}

Cyclotomic Cyclotomic::operator-(const Cyclotomic& o) const { return *this + (-o); }

Cyclotomic Cyclotomic::operator*(const Rational& q) const {
  if (q == 0) return Cyclotomic(p_);
  Cyclotomic r = *this;
  for (auto& [j, x] : r.c_) x *= q;
  return r;
}

Cyclotomic Cyclotomic::operator*(const Cyclotomic& o) const {
  if (is_zero() || o.is_zero()) return Cyclotomic(is_zero() ? p_ : o.p_);
  if (p_ != o.p_) throw DomainError("cyclotomic prime mismatch");
  int L = std::max(level_, o.level_);
  Cyclotomic a = lifted(L), b = o.lifted(L);
  const int64_t n = modp::pow(p_, L);
  std::map<int64_t, Rational> raw;
  for (const auto& [i, x] : a.c_)
    for (const auto& [j, y] : b.c_) raw[(i + j) % n] += x * y;
  Cyclotomic r(p_);
  r.level_ = L;
  r.reduce(std::move(raw));
  return r;
}

Cyclotomic Cyclotomic::conj() const {
  const int64_t n = modp::pow(p_, level_);
  std::map<int64_t, Rational> raw;
  for (const auto& [j, q] : c_) raw[(n - j) % n] += q;
  Cyclotomic r(p_);
  r.level_ = level_;
  r.reduce(std::move(raw));
  return r;
}

std::complex<double> Cyclotomic::to_complex() const {
  const long double n = static_cast<long double>(modp::pow(p_, level_));
  long double re = 0, im = 0;
  for (const auto& [j, q] : c_) {
    long double x = static_cast<long double>(q);
    long double t = 2 * std::numbers::pi_v<long double> * static_cast<long double>(j) / n;
    re += x * std::cos(t);
    im += x * std::sin(t);
  }
  return {static_cast<double>(re), static_cast<double>(im)};
}

std::vector<Cyclotomic::Term> Cyclotomic::terms() const {
  std::vector<Term> out;
  for (const auto& [j, q] : c_) out.push_back({q, j, level_});
  return out;
}

}  // namespace stransfer
