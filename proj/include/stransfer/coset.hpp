#pragma once

// Finite combinations of character-twisted lattice cosets on s or s', with an
// exact Fourier transform for the self-dual Haar measure of the trace pairing.

#include <complex>
#include <string>
#include <vector>

#include "stransfer/cyclotomic.hpp"
#include "stransfer/symmetric_pairs.hpp"

namespace stransfer {

// a + b sqrt(p) with a, b in Q(zeta_{p^inf}). For p = 1 mod 4 the square
// root is folded into a through the quadratic Gauss sum, so the pair is
// canonical in both cases.
class ExactScalar {
 public:
  ExactScalar() = default;
  explicit ExactScalar(int64_t p) : a_(p), b_(p), p_(p) {}
  ExactScalar(const Cyclotomic& a);  // NOLINT(google-explicit-constructor)
  ExactScalar(const Cyclotomic& a, const Cyclotomic& b);
  static ExactScalar rational(int64_t p, const Rational& q);
  // p^{h/2}
  static ExactScalar sqrt_p_power(int64_t p, int h);

  int64_t prime() const { return p_; }
  const Cyclotomic& a() const { return a_; }
  const Cyclotomic& b() const { return b_; }
  bool is_zero() const { return a_.is_zero() && b_.is_zero(); }

  ExactScalar operator+(const ExactScalar& o) const;
  ExactScalar operator-(const ExactScalar& o) const;
  ExactScalar operator-() const;
  ExactScalar operator*(const ExactScalar& o) const;
  ExactScalar& operator+=(const ExactScalar& o) { return *this = *this + o; }
  ExactScalar& operator*=(const ExactScalar& o) { return *this = *this * o; }
  bool operator==(const ExactScalar& o) const { return (*this - o).is_zero(); }

  std::complex<double> to_complex() const;
  std::string to_string() const;

 private:
  void fold();

  Cyclotomic a_, b_;
  int64_t p_ = 3;
};

using Vec = std::vector<PadicNumber>;

enum class Side { S, SPrime };

// Coordinates on s or s' with <X, Y> = sum_i g_i X_i Y_{partner(i)}.
//   s:  A1 entries row-major, then A2; A1_ij pairs with A2_ji, g = 1.
//   s': B = alpha + beta sqrt(Delta), alpha entries then beta; alpha_ij pairs
//       with alpha_ji (g = 2 gamma) and beta_ij with beta_ji (g = -2 gamma Delta).
// The standard lattice is the product of O in every coordinate, i.e.
// gl_n(O) + gl_n(O), resp. gl_n(O_E).
struct LatticeSpace {
  Side side = Side::S;
  int n = 1;
  FieldConfig cfg;
  std::vector<int> partner;
  std::vector<PadicNumber> g;
  std::vector<int> gval;

  static LatticeSpace make(Side side, int n, const FieldConfig& cfg);
  int dim() const { return static_cast<int>(partner.size()); }
  int64_t prime() const { return cfg.p; }
  PadicNumber pair(const Vec& x, const Vec& y) const;
  bool self_dual() const;
  // Scales of the dual lattice of (+) p^{a_i} O.
  std::vector<int> dual_scales(const std::vector<int>& a) const;
  // Self-dual volume of (+) p^{a_i} O.
  ExactScalar volume(const std::vector<int>& a) const;
  Vec zero_vec() const;
};

Vec coords(const LieSElement& x);
Vec coords(const LieSPrimeElement& y);
LieSElement s_element(const Vec& v, int n);
LieSPrimeElement s_prime_element(const Vec& v, int n, const FieldConfig& cfg);

// coeff * psi(<chi, X>) * 1[X - center in (+) p^{scale_i} O]
struct CosetTerm {
  ExactScalar coeff;
  Vec chi;
  Vec center;
  std::vector<int> scale;
};

class CosetFunction {
 public:
  CosetFunction() = default;
  explicit CosetFunction(LatticeSpace space) : space_(std::move(space)) {}

  // 1 on center + p^a L0.
  static CosetFunction ball(const LatticeSpace& space, const Vec& center, int a);
  static CosetFunction standard(const LatticeSpace& space) {
    return ball(space, space.zero_vec(), 0);
  }

  const LatticeSpace& space() const { return space_; }
  const std::vector<CosetTerm>& terms() const { return terms_; }
  void add(CosetTerm t);

  CosetFunction operator+(const CosetFunction& o) const;
  CosetFunction scaled(const ExactScalar& s) const;
  CosetFunction fourier() const;

  ExactScalar operator()(const Vec& x) const;
  ExactScalar operator()(const LieSElement& x) const { return (*this)(coords(x)); }
  ExactScalar operator()(const LieSPrimeElement& y) const { return (*this)(coords(y)); }

 private:
  LatticeSpace space_;
  std::vector<CosetTerm> terms_;
};

// Whether x lies in center + (+) p^{scale_i} O. Throws PrecisionError when the
// working precision cannot decide.
bool in_coset(const Vec& x, const Vec& center, const std::vector<int>& scale);
// psi(<chi, x>) for one term, or nothing outside the coset.
bool term_value(const LatticeSpace& s, const CosetTerm& t, const Vec& x, CharacterValue* out);

}  // namespace stransfer
