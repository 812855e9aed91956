#pragma once

// Exact elements of Q(zeta_{p^K}) stored sparsely in the power basis
// 1, zeta, ..., zeta^(phi(p^K)-1) of zeta = exp(2 pi i / p^K).

#include <boost/multiprecision/cpp_int.hpp>
#include <complex>
#include <map>
#include <string>
#include <vector>

#include "stransfer/padic.hpp"

namespace stransfer {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

std::string rational_to_string(const Rational& q);
Rational rational_from_string(const std::string& s);
// p^e as an exact rational (e may be negative).
Rational rational_ppow(int64_t p, int e);

class Cyclotomic {
 public:
  struct Term {
    Rational coeff;
    int64_t num;  // exponent of zeta_{p^level}
    int level;
  };

  Cyclotomic() = default;
  explicit Cyclotomic(int64_t p) : p_(p) {}
  Cyclotomic(int64_t p, const Rational& q);
  static Cyclotomic character(const CharacterValue& c, const Rational& coeff = 1);
  // sum_j counts[j] * zeta_{p^level}^j.
  static Cyclotomic from_histogram(int64_t p, int level, const std::vector<Rational>& counts);
  // sum_j counts[j] * zeta_{p^level}^j * scale, reduced in integers first.
  static Cyclotomic from_counts(int64_t p, int level, std::vector<int64_t> counts,
                                const Rational& scale);

  int64_t prime() const { return p_; }
  int level() const { return level_; }
  bool is_zero() const;
  bool is_rational() const;
  Rational rational_part() const;  // coefficient of 1 when is_rational()

  Cyclotomic operator+(const Cyclotomic& o) const;
  Cyclotomic operator-(const Cyclotomic& o) const;
  Cyclotomic operator-() const;
  Cyclotomic operator*(const Cyclotomic& o) const;
  Cyclotomic operator*(const Rational& q) const;
  Cyclotomic& operator+=(const Cyclotomic& o) { return *this = *this + o; }
  Cyclotomic& operator*=(const Cyclotomic& o) { return *this = *this * o; }
  bool operator==(const Cyclotomic& o) const { return (*this - o).is_zero(); }

  // Complex conjugate (zeta -> zeta^-1).
  Cyclotomic conj() const;
  std::complex<double> to_complex() const;
  // Nonzero power-basis terms at the lowest level that represents the value.
  std::vector<Term> terms() const;

 private:
  Cyclotomic lifted(int level) const;
  void reduce(std::map<int64_t, Rational> raw);

  int64_t p_ = 3;
  int level_ = 0;
  std::map<int64_t, Rational> c_;  // nonzero coefficients only
};

}  // namespace stransfer
