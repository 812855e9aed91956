#pragma once

// The two symmetric pairs: s = gl_n + gl_n inside gl_2n with H = GL_n x GL_n,
// and s' = {[[0, gamma B], [Bbar, 0]]} with H' = GL_n(E) acting by twisted
// conjugation.

#include <string>

#include "stransfer/matrix.hpp"

namespace stransfer {

struct LieSElement {
  MatF a1, a2;  // the block matrix [[0, a1], [a2, 0]]

  int n() const { return a1.rows(); }
  static LieSElement n1(const PadicNumber& x, const PadicNumber& y);
  MatF to_block() const;
  LieSElement operator+(const LieSElement& o) const { return {a1 + o.a1, a2 + o.a2}; }
  LieSElement operator-(const LieSElement& o) const { return {a1 - o.a1, a2 - o.a2}; }
  LieSElement operator-() const { return {-a1, -a2}; }
  LieSElement scaled(const PadicNumber& s) const { return {a1.scaled(s), a2.scaled(s)}; }
  bool operator==(const LieSElement& o) const { return a1 == o.a1 && a2 == o.a2; }
};

struct LieSPrimeElement {
  MatE b;
  PadicNumber gamma;

  int n() const { return b.rows(); }
  static LieSPrimeElement n1(const ExtElement& b, const PadicNumber& gamma);
  MatE to_block() const;
  LieSPrimeElement operator+(const LieSPrimeElement& o) const { return {b + o.b, gamma}; }
  LieSPrimeElement operator-(const LieSPrimeElement& o) const { return {b - o.b, gamma}; }
  LieSPrimeElement scaled(const PadicNumber& s) const;
  bool operator==(const LieSPrimeElement& o) const { return b == o.b; }
};

struct HElement {
  MatF h1, h2;
  static HElement identity(int n, const FieldConfig& cfg);
  HElement operator*(const HElement& o) const { return {h1 * o.h1, h2 * o.h2}; }
  MatF to_block() const;
};

struct HPrimeElement {
  MatE h;
  HPrimeElement operator*(const HPrimeElement& o) const { return {h * o.h}; }
};

// (h1, h2) . (A1, A2) = (h1 A1 h2^-1, h2 A2 h1^-1)
LieSElement act(const HElement& h, const LieSElement& x);
// h . B = h B hbar^-1
LieSPrimeElement act_twisted(const HPrimeElement& h, const LieSPrimeElement& y);

// tr(XY) computed blockwise.
PadicNumber pairing(const LieSElement& x, const LieSElement& y);
PadicNumber pairing(const LieSPrimeElement& x, const LieSPrimeElement& y);
PadicNumber trace_pairing(const MatF& x, const MatF& y);

// eps = diag(1_n, -1_n) and theta = Ad(eps).
MatF epsilon(int n, const FieldConfig& cfg);
MatF theta(const MatF& x);

// s(g) = g eps g^-1 eps.
MatF symmetrize(const MatF& g);
// (1 - X)(1 + X)^-1.
MatF cayley(const MatF& x);

// |.|_F value p^{-twice_exponent/2}.
struct AbsValue {
  int64_t p = 3;
  int twice_exponent = 0;
  double to_double() const;
  bool operator==(const AbsValue& o) const {
    return p == o.p && twice_exponent == o.twice_exponent;
  }
  std::string to_string() const;
};

// Matrix of ad(X) on gl_N in the basis E_ij (row-major index i*N+j).
template <class T>
Matrix<T> ad_matrix(const Matrix<T>& x) {
  const int N = x.rows();
  Matrix<T> ad(N * N, N * N, x.zero());
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) {
      const int col = i * N + j;
      // X E_ij has column j equal to column i of X; E_ij X has row i equal to row j of X.
      for (int r = 0; r < N; ++r) ad(r * N + j, col) += x(r, i);
      for (int c = 0; c < N; ++c) ad(i * N + c, col) -= x(j, c);
    }
  return ad;
}

// |det(ad X ; h/t + s/c)|^{1/2}. Throws DomainError when X is not regular
// semisimple at working precision.
AbsValue disc_factor(const LieSElement& x);
AbsValue disc_factor(const LieSPrimeElement& y);

}  // namespace stransfer
