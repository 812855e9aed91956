#include "stransfer/padic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <tuple>

namespace stransfer {

namespace modp {

int64_t pow(int64_t base, int exp) {
  int64_t r = 1;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

int64_t mulmod(int64_t a, int64_t b, int64_t m) {
  __int128 r = static_cast<__int128>(a) * b % m;
  if (r < 0) r += m;
  return static_cast<int64_t>(r);
}

int64_t powmod(int64_t a, int64_t e, int64_t m) {
  int64_t r = 1 % m;
  a %= m;
  if (a < 0) a += m;
  while (e > 0) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

int64_t invmod(int64_t a, int64_t m) {
  int64_t g = m, x = 0, x1 = 1, a1 = a % m;
  if (a1 < 0) a1 += m;
  while (a1 != 0) {
    int64_t q = g / a1;
    std::tie(g, a1) = std::make_tuple(a1, g - q * a1);
    std::tie(x, x1) = std::make_tuple(x1, x - q * x1);
  }
  if (g != 1) throw DomainError("invmod: not invertible");
  x %= m;
  return x < 0 ? x + m : x;
}

int legendre(int64_t a, int64_t p) {
  int64_t r = powmod(a, (p - 1) / 2, p);
  if (r == 0) return 0;
  return r == 1 ? 1 : -1;
}

bool is_prime(int64_t n) {
  if (n < 2) return false;
  for (int64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

int64_t least_nonresidue(int64_t p) {
  for (int64_t u = 2; u < p; ++u)
    if (legendre(u, p) == -1) return u;
  throw DomainError("no nonresidue");
}

}  // namespace modp

namespace {

int32_t strip_p(int64_t& n, int64_t p) {
  int32_t v = 0;
  while (n % p == 0) {
    n /= p;
    ++v;
  }
  return v;
}

void check_compatible(const PadicNumber& a, const PadicNumber& b) {
  if (a.prime() != b.prime()) throw DomainError("mixed primes");
}

}  // namespace

PadicNumber PadicNumber::zero(int64_t p, int cap, int32_t abs_prec) {
  return PadicNumber(p, cap, std::min(abs_prec, kExactZero), 0, 0);
}

PadicNumber PadicNumber::from_int(int64_t n, int64_t p, int cap) {
  return from_rational(n, 1, p, cap);
}

PadicNumber PadicNumber::from_rational(int64_t num, int64_t den, int64_t p, int cap) {
  if (den == 0) throw DomainError("zero denominator");
  if (num == 0) return zero(p, cap);
  int32_t v = strip_p(num, p) - strip_p(den, p);
  int64_t m = modp::pow(p, cap);
  int64_t u = modp::mulmod(num % m, modp::invmod(den % m, m), m);
  return PadicNumber(p, cap, v, cap, u);
}

PadicNumber PadicNumber::from_parts(int32_t val, int64_t unit, int64_t p, int cap,
                                    int digits) {
  if (digits < 0) digits = cap;
  if (digits == 0) return zero(p, cap, val);
  if (unit % p == 0) throw DomainError("from_parts: unit divisible by p");
  int64_t m = modp::pow(p, digits);
  unit %= m;
  if (unit < 0) unit += m;
  return PadicNumber(p, cap, val, std::min(digits, cap), unit);
}

PadicNumber PadicNumber::parse(const std::string& text, int64_t p, int cap) {
  auto colon = text.find(':');
  if (colon != std::string::npos) {
    int32_t v = std::stoi(text.substr(0, colon));
    int64_t m = std::stoll(text.substr(colon + 1));
    return from_int(m, p, cap).shifted(v);
  }
  auto slash = text.find('/');
  if (slash != std::string::npos)
    return from_rational(std::stoll(text.substr(0, slash)),
                         std::stoll(text.substr(slash + 1)), p, cap);
  return from_int(std::stoll(text), p, cap);
}

int32_t PadicNumber::valuation() const {
  if (is_zero()) throw PrecisionError("valuation of zero-at-precision");
  return val_;
}

int64_t PadicNumber::residue(int k) const {
  if (k <= 0) return 0;
  if (absolute_precision() < k) throw PrecisionError("residue: insufficient precision");
  if (is_zero()) return 0;
  if (val_ < 0) throw DomainError("residue of non-integral element");
  if (val_ >= k) return 0;
  int64_t m = modp::pow(p_, k);
  return modp::mulmod(unit_, modp::pow(p_, val_), m);
}

PadicNumber PadicNumber::operator-() const {
  if (is_zero()) return *this;
  int64_t m = modp::pow(p_, digits_);
  return PadicNumber(p_, cap_, val_, digits_, (m - unit_) % m);
}

PadicNumber PadicNumber::operator+(const PadicNumber& o) const {
  check_compatible(*this, o);
  int32_t abs = std::min(absolute_precision(), o.absolute_precision());
  if (is_zero() && o.is_zero()) return zero(p_, cap_, abs);
  int32_t vmin = std::min(is_zero() ? kExactZero : val_,
                          o.is_zero() ? kExactZero : o.val_);
  if (abs <= vmin) return zero(p_, cap_, abs);
  int m = abs - vmin;
  int64_t mod = modp::pow(p_, m);
  auto term = [&](const PadicNumber& x) -> int64_t {
    if (x.is_zero() || x.val_ - vmin >= m) return 0;
    return modp::mulmod(x.unit_ % mod, modp::pow(p_, x.val_ - vmin), mod);
  };
  int64_t s = (term(*this) + term(o)) % mod;
  if (s == 0) return zero(p_, cap_, abs);
  int32_t k = strip_p(s, p_);
  return PadicNumber(p_, cap_, vmin + k, m - k, s);
}

PadicNumber PadicNumber::operator-(const PadicNumber& o) const { return *this + (-o); }

PadicNumber PadicNumber::operator*(const PadicNumber& o) const {
  check_compatible(*this, o);
  if (is_zero() || o.is_zero()) {
    auto shift = [](const PadicNumber& z, const PadicNumber& w) {
      if (z.is_exact_zero()) return kExactZero;
      if (w.is_zero()) return std::min(kExactZero, z.val_ + std::max(0, w.val_));
      return std::min(kExactZero, z.val_ + w.val_);
    };
    int32_t abs = kExactZero;
    if (is_zero()) abs = std::min(abs, shift(*this, o));
    if (o.is_zero()) abs = std::min(abs, shift(o, *this));
    return zero(p_, cap_, abs);
  }
  int32_t d = std::min(digits_, o.digits_);
  int64_t mod = modp::pow(p_, d);
  return PadicNumber(p_, cap_, val_ + o.val_, d, modp::mulmod(unit_, o.unit_, mod));
}

PadicNumber PadicNumber::inverse() const {
  if (is_zero()) throw PrecisionError("inverse of zero-at-precision");
  int64_t mod = modp::pow(p_, digits_);
  return PadicNumber(p_, cap_, -val_, digits_, modp::invmod(unit_, mod));
}

PadicNumber PadicNumber::operator/(const PadicNumber& o) const {
  return *this * o.inverse();
}

PadicNumber PadicNumber::pow(int e) const {
  if (e < 0) return inverse().pow(-e);
  PadicNumber r = from_int(1, p_, cap_);
  PadicNumber b = *this;
  while (e > 0) {
    if (e & 1) r *= b;
    b *= b;
    e >>= 1;
  }
  return r;
}

PadicNumber PadicNumber::shifted(int k) const {
  if (is_exact_zero()) return *this;
  PadicNumber r = *this;
  r.val_ += k;
  return r;
}

int PadicNumber::square_class() const {
  if (is_zero()) throw PrecisionError("square class of zero");
  int unit_cls = modp::legendre(unit_ % p_, p_) == 1 ? 0 : 1;
  int val_cls = (val_ % 2 != 0) ? 2 : 0;
  return val_cls + unit_cls;
}

std::string PadicNumber::to_string() const {
  if (is_zero()) return "0";
  return std::to_string(val_) + ":" + std::to_string(unit_);
}

FieldConfig FieldConfig::make(int64_t p, int precision, DeltaClass cls,
                              int64_t gamma_num, int64_t gamma_den) {
  if (p == 2 || !modp::is_prime(p)) throw DomainError("p must be an odd prime");
  if (precision < 4) throw DomainError("precision must be at least 4");
  if (modp::pow(p, precision) > (int64_t{1} << 62) / p)
    throw DomainError("p^precision exceeds the 62-bit budget");
  FieldConfig c;
  c.p = p;
  c.precision = precision;
  c.delta_class = cls;
  c.gamma = PadicNumber::from_rational(gamma_num, gamma_den, p, precision);
  return c;
}

PadicNumber FieldConfig::square_class_rep(int cls) const {
  int64_t u = (cls & 1) ? u0() : 1;
  return num(u).shifted((cls & 2) ? 1 : 0);
}

QuadExtension FieldConfig::extension() const {
  QuadExtension e;
  e.cls = delta_class;
  switch (delta_class) {
    case DeltaClass::Unramified: e.delta_sq = square_class_rep(1); break;
    case DeltaClass::Ramified: e.delta_sq = square_class_rep(2); break;
    case DeltaClass::RamifiedU0: e.delta_sq = square_class_rep(3); break;
  }
  return e;
}

ExtElement ExtElement::embed(const PadicNumber& a, const QuadExtension& e) {
  return ExtElement(a, PadicNumber::zero(a.prime(), a.cap()), e.delta_sq);
}

ExtElement ExtElement::operator*(const ExtElement& o) const {
  return {a_ * o.a_ + d_ * b_ * o.b_, a_ * o.b_ + b_ * o.a_, d_};
}

ExtElement ExtElement::inverse() const {
  PadicNumber n = norm();
  if (n.is_zero()) throw PrecisionError("inverse of zero in E");
  PadicNumber ni = n.inverse();
  return {a_ * ni, -b_ * ni, d_};
}

std::string ExtElement::to_string() const {
  return "(" + a_.to_string() + "," + b_.to_string() + ")";
}

CharacterValue::CharacterValue(int64_t num, int k, int64_t p) : p_(p) {
  if (k < 0) k = 0;
  int64_t m = modp::pow(p, k);
  num %= m;
  if (num < 0) num += m;
  while (k > 0 && num % p == 0) {
    num /= p;
    --k;
  }
  if (num == 0) k = 0;
  num_ = num;
  k_ = k;
}

CharacterValue CharacterValue::operator*(const CharacterValue& o) const {
  int k = std::max(k_, o.k_);
  int64_t m = modp::pow(p_, k);
  int64_t a = modp::mulmod(num_, modp::pow(p_, k - k_), m);
  int64_t b = modp::mulmod(o.num_, modp::pow(p_, k - o.k_), m);
  return CharacterValue((a + b) % m, k, p_);
}

double CharacterValue::phase() const {
  if (k_ == 0) return 0.0;
  return static_cast<double>(num_) / static_cast<double>(modp::pow(p_, k_));
}

int hilbert_symbol(const PadicNumber& a, const PadicNumber& b) {
  if (a.is_zero() || b.is_zero()) throw PrecisionError("hilbert_symbol: zero argument");
  int64_t p = a.prime();
  int64_t alpha = a.valuation(), beta = b.valuation();
  int sign = 1;
  if ((alpha & 1) && (beta & 1) && (((p - 1) / 2) & 1)) sign = -sign;
  if (beta & 1) sign *= modp::legendre(a.unit() % p, p);
  if (alpha & 1) sign *= modp::legendre(b.unit() % p, p);
  return sign;
}

int eta(const PadicNumber& a, const QuadExtension& e) {
  return hilbert_symbol(a, e.delta_sq);
}

CharacterValue psi(const PadicNumber& x) {
  if (x.is_zero()) {
    if (x.absolute_precision() < 0) throw PrecisionError("psi: insufficient precision");
    return CharacterValue::one(x.prime());
  }
  if (x.valuation() >= 0) return CharacterValue::one(x.prime());
  int k = -x.valuation();
  if (x.digits() < k) throw PrecisionError("psi: insufficient precision");
  return CharacterValue(x.unit() % modp::pow(x.prime(), k), k, x.prime());
}

std::optional<PadicNumber> hensel_simple_root(std::span<const PadicNumber> f,
                                              int64_t r0) {
  if (f.empty()) return std::nullopt;
  int64_t p = f[0].prime();
  int cap = f[0].cap();
  auto eval = [&](const PadicNumber& x, bool deriv) {
    PadicNumber acc = PadicNumber::zero(p, cap);
    for (size_t i = f.size(); i-- > 0;) {
      if (deriv) {
        if (i == 0) break;
        acc = acc * x + f[i] * PadicNumber::from_int(static_cast<int64_t>(i), p, cap);
      } else {
        acc = acc * x + f[i];
      }
    }
    return acc;
  };
  for (const auto& c : f)
    if (!c.is_zero() && c.valuation() < 0) throw DomainError("hensel: non-integral coefficient");
  PadicNumber x = PadicNumber::from_int(r0, p, cap);
  PadicNumber fx = eval(x, false);
  PadicNumber dx = eval(x, true);
  if (!(fx.is_zero() || fx.valuation() >= 1)) return std::nullopt;
  if (dx.is_zero() || dx.valuation() != 0) return std::nullopt;
  for (int it = 0; it < 64; ++it) {
    fx = eval(x, false);
    if (fx.is_zero()) break;
    dx = eval(x, true);
    x = x - fx / dx;
  }
  // Restore full relative precision lost to cancellation.
  if (x.is_zero()) return PadicNumber::zero(p, cap);
  return PadicNumber::from_parts(x.valuation(), x.unit(), p, cap, x.digits());
}

std::optional<ExtElement> norm_preimage(const PadicNumber& a, const QuadExtension& e) {
  if (a.is_zero()) throw PrecisionError("norm_preimage: zero");
  if (eta(a, e) != 1) return std::nullopt;
  int64_t p = a.prime();
  int cap = a.cap();
  const PadicNumber& d = e.delta_sq;
  PadicNumber zero = PadicNumber::zero(p, cap);
  // Reduce to a unit or a unit times Delta by peeling off norms of p or delta.
  int v = a.valuation();
  PadicNumber scale_re = PadicNumber::from_int(1, p, cap), scale_im = zero;
  PadicNumber rest = a;
  if (e.ramified()) {
    // N(delta) = -Delta has valuation 1.
    ExtElement s(PadicNumber::from_int(1, p, cap), zero, d);
    ExtElement del(zero, PadicNumber::from_int(1, p, cap), d);
    for (int i = 0; i < v; ++i) s *= del;
    if (v < 0)
      for (int i = 0; i < -v; ++i) s *= del.inverse();
    rest = a / s.norm();
    scale_re = s.re();
    scale_im = s.im();
  } else {
    if (v % 2 != 0) return std::nullopt;
    rest = a.shifted(-v);
    scale_re = PadicNumber::from_int(1, p, cap).shifted(v / 2);
  }
  // rest is a unit norm: solve x^2 - Delta y^2 = rest mod p, then lift x.
  int64_t r = rest.residue(1);
  int64_t dd = d.valuation() == 0 ? d.residue(1) : 0;
  for (int64_t y = 0; y < p; ++y) {
    int64_t t = (r + modp::mulmod(dd, y * y, p)) % p;
    for (int64_t x0 = 1; x0 < p; ++x0) {
      if (modp::mulmod(x0, x0, p) != t) continue;
      PadicNumber yv = PadicNumber::from_int(y, p, cap);
      PadicNumber c = rest + d * yv * yv;
      std::vector<PadicNumber> poly{-c, zero, PadicNumber::from_int(1, p, cap)};
      auto root = hensel_simple_root(poly, x0);
      if (!root) continue;
      ExtElement b(*root, yv, d);
      ExtElement s(scale_re, scale_im, d);
      return b * s;
    }
  }
  throw DomainError("norm_preimage: no residue solution found");
}

}  // namespace stransfer
