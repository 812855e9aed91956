#pragma once

// Fixed-precision arithmetic in Q_p (p odd) and in its quadratic extensions.
//
// A nonzero PadicNumber is p^val * unit where unit is known modulo p^digits
// (digits <= the working precision N). Zero is tracked together with the
// absolute precision at which it is known to vanish; a literal zero is exact.

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace stransfer {

class PrecisionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Mathematically meaningful input outside what an engine can decide.
class UnsupportedError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace modp {
int64_t pow(int64_t base, int exp);
int64_t mulmod(int64_t a, int64_t b, int64_t m);
int64_t powmod(int64_t a, int64_t e, int64_t m);
int64_t invmod(int64_t a, int64_t m);
int legendre(int64_t a, int64_t p);
bool is_prime(int64_t n);
// Least quadratic nonresidue modulo an odd prime.
int64_t least_nonresidue(int64_t p);
}  // namespace modp

class PadicNumber {
 public:
  static constexpr int32_t kExactZero = 1 << 28;

  PadicNumber() = default;

  static PadicNumber zero(int64_t p, int cap, int32_t abs_prec = kExactZero);
  static PadicNumber from_int(int64_t n, int64_t p, int cap);
  static PadicNumber from_rational(int64_t num, int64_t den, int64_t p, int cap);
  // p^val * unit with unit taken modulo p^digits; unit must be prime to p.
  static PadicNumber from_parts(int32_t val, int64_t unit, int64_t p, int cap,
                                int digits = -1);
  // Parses "a", "a/b" or "v:mantissa" (the latter meaning p^v * mantissa).
  static PadicNumber parse(const std::string& text, int64_t p, int cap);

  int64_t prime() const { return p_; }
  int cap() const { return cap_; }
  bool is_zero() const { return digits_ == 0; }
  bool is_exact_zero() const { return is_zero() && val_ >= kExactZero; }
  // Throws PrecisionError on zero.
  int32_t valuation() const;
  // Valuation, or the absolute precision for a zero.
  int32_t valuation_or_prec() const { return val_; }
  int64_t unit() const { return unit_; }
  int32_t digits() const { return digits_; }
  int32_t absolute_precision() const {
    return is_zero() ? val_ : val_ + digits_;
  }

  // Residue of an integral element modulo p^k. Requires val >= 0 and enough
  // absolute precision.
  int64_t residue(int k) const;

  PadicNumber operator-() const;
  PadicNumber operator+(const PadicNumber& o) const;
  PadicNumber operator-(const PadicNumber& o) const;
  PadicNumber operator*(const PadicNumber& o) const;
  PadicNumber operator/(const PadicNumber& o) const;
  PadicNumber& operator+=(const PadicNumber& o) { return *this = *this + o; }
  PadicNumber& operator-=(const PadicNumber& o) { return *this = *this - o; }
  PadicNumber& operator*=(const PadicNumber& o) { return *this = *this * o; }
  PadicNumber inverse() const;
  PadicNumber pow(int e) const;
  PadicNumber shifted(int k) const;  // times p^k

  // Equal at the available precision.
  bool operator==(const PadicNumber& o) const { return (*this - o).is_zero(); }

  // Index in {0: 1, 1: u0, 2: p, 3: u0 p} of the square class.
  int square_class() const;
  bool is_square() const { return square_class() == 0; }

  std::string to_string() const;  // "v:mantissa" or "0"

 private:
  PadicNumber(int64_t p, int cap, int32_t val, int32_t digits, int64_t unit)
      : p_(p), cap_(cap), val_(val), digits_(digits), unit_(unit) {}

  int64_t p_ = 3;
  int32_t cap_ = 1;
  int32_t val_ = kExactZero;
  int32_t digits_ = 0;
  int64_t unit_ = 0;
};

enum class DeltaClass { Unramified = 0, Ramified = 1, RamifiedU0 = 2 };

struct QuadExtension {
  DeltaClass cls = DeltaClass::Unramified;
  PadicNumber delta_sq;  // Delta, with E = F(sqrt(Delta))
  bool ramified() const { return cls != DeltaClass::Unramified; }
};

struct FieldConfig {
  int64_t p = 3;
  int precision = 10;
  DeltaClass delta_class = DeltaClass::Unramified;
  PadicNumber gamma;

  static FieldConfig make(int64_t p, int precision,
                          DeltaClass cls = DeltaClass::Unramified,
                          int64_t gamma_num = 1, int64_t gamma_den = 1);

  PadicNumber num(int64_t n) const { return PadicNumber::from_int(n, p, precision); }
  PadicNumber rat(int64_t a, int64_t b) const {
    return PadicNumber::from_rational(a, b, p, precision);
  }
  PadicNumber parse(const std::string& s) const {
    return PadicNumber::parse(s, p, precision);
  }
  PadicNumber zero() const { return PadicNumber::zero(p, precision); }
  int64_t u0() const { return modp::least_nonresidue(p); }
  // Representative {1, u0, p, u0 p} of a square class index.
  PadicNumber square_class_rep(int cls) const;
  QuadExtension extension() const;
};

class ExtElement {
 public:
  ExtElement() = default;
  ExtElement(PadicNumber a, PadicNumber b, PadicNumber delta_sq)
      : a_(std::move(a)), b_(std::move(b)), d_(std::move(delta_sq)) {}
  static ExtElement embed(const PadicNumber& a, const QuadExtension& e);
  static ExtElement make(const PadicNumber& a, const PadicNumber& b,
                         const QuadExtension& e) {
    return ExtElement(a, b, e.delta_sq);
  }

  const PadicNumber& re() const { return a_; }
  const PadicNumber& im() const { return b_; }
  const PadicNumber& delta_sq() const { return d_; }

  ExtElement conj() const { return {a_, -b_, d_}; }
  PadicNumber norm() const { return a_ * a_ - d_ * b_ * b_; }
  PadicNumber trace() const { return a_ + a_; }
  bool is_zero() const { return a_.is_zero() && b_.is_zero(); }
  bool in_base_field() const { return b_.is_zero(); }
  // v_F(N(x)); equals 2 v_E(x) for unramified E and v_E(x) for ramified E.
  int32_t norm_valuation() const { return norm().valuation(); }

  ExtElement operator-() const { return {-a_, -b_, d_}; }
  ExtElement operator+(const ExtElement& o) const { return {a_ + o.a_, b_ + o.b_, d_}; }
  ExtElement operator-(const ExtElement& o) const { return {a_ - o.a_, b_ - o.b_, d_}; }
  ExtElement operator*(const ExtElement& o) const;
  ExtElement operator/(const ExtElement& o) const { return *this * o.inverse(); }
  ExtElement& operator+=(const ExtElement& o) { return *this = *this + o; }
  ExtElement& operator-=(const ExtElement& o) { return *this = *this - o; }
  ExtElement& operator*=(const ExtElement& o) { return *this = *this * o; }
  ExtElement inverse() const;
  bool operator==(const ExtElement& o) const { return (*this - o).is_zero(); }

  std::string to_string() const;

 private:
  PadicNumber a_, b_, d_;
};

// exp(2 pi i num / p^k), kept reduced (num prime to p, or num = 0 and k = 0).
class CharacterValue {
 public:
  CharacterValue() = default;
  CharacterValue(int64_t num, int k, int64_t p);
  static CharacterValue one(int64_t p) { return CharacterValue(0, 0, p); }

  int64_t num() const { return num_; }
  int level() const { return k_; }
  int64_t prime() const { return p_; }
  bool is_one() const { return k_ == 0; }
  CharacterValue operator*(const CharacterValue& o) const;
  CharacterValue conj() const { return CharacterValue(-num_, k_, p_); }
  bool operator==(const CharacterValue& o) const {
    return num_ == o.num_ && k_ == o.k_;
  }
  // Fraction t in [0,1) with value exp(2 pi i t).
  double phase() const;

 private:
  int64_t num_ = 0;
  int k_ = 0;
  int64_t p_ = 3;
};

// Hilbert symbol (a,b)_F for p odd.
int hilbert_symbol(const PadicNumber& a, const PadicNumber& b);
// Quadratic character attached to E/F.
int eta(const PadicNumber& a, const QuadExtension& e);
// Additive character of conductor O_F: psi(x) = exp(2 pi i {x}_p).
CharacterValue psi(const PadicNumber& x);

// The unique root congruent to r0 mod p of f (coefficients low to high,
// integral). Returns nullopt when r0 is not a simple root mod p.
std::optional<PadicNumber> hensel_simple_root(std::span<const PadicNumber> f,
                                              int64_t r0);

// Some b in E with N(b) = a, or nullopt when a is not a norm.
std::optional<ExtElement> norm_preimage(const PadicNumber& a, const QuadExtension& e);

}  // namespace stransfer
