#pragma once

// Weil indices of quadratic forms over F, evaluated from the Gauss integral
// over an admissible lattice and snapped to an eighth root of unity.

#include <complex>
#include <vector>

#include "stransfer/kernels.hpp"
#include "stransfer/matrix.hpp"

namespace stransfer {

class Mu8Value {
 public:
  Mu8Value() = default;
  explicit Mu8Value(int k) : k_(((k % 8) + 8) % 8) {}
  int index() const { return k_; }
  Mu8Value operator*(const Mu8Value& o) const { return Mu8Value(k_ + o.k_); }
  Mu8Value inverse() const { return Mu8Value(-k_); }
  bool operator==(const Mu8Value& o) const { return k_ == o.k_; }
  bool operator!=(const Mu8Value& o) const { return k_ != o.k_; }
  std::complex<double> value() const;
  // Nearest element of mu_8 to z/|z|; throws DomainError beyond tol.
  static Mu8Value snap(std::complex<double> z, double tol = 1e-6);

 private:
  int k_ = 0;
};

struct QuadraticForm {
  MatF gram;  // symmetric; q(v) = v^T gram v

  static QuadraticForm diagonal(const std::vector<PadicNumber>& d) {
    return {MatF::diag(d)};
  }
  int dim() const { return gram.rows(); }
  bool is_diagonal() const;
  std::vector<PadicNumber> diagonal_entries() const;
  QuadraticForm operator+(const QuadraticForm& o) const;  // orthogonal sum
  QuadraticForm scaled(const PadicNumber& a) const;
};

struct Diagonalization {
  QuadraticForm form;  // diagonal
  MatF basis;          // columns: new basis, basis^T gram basis = form.gram
};

// Congruence diagonalization; throws DomainError on a degenerate form.
Diagonalization diagonalize(const QuadraticForm& q);
// Same, but zero directions are dropped instead of rejected.
std::vector<PadicNumber> diagonalize_nondegenerate_part(const QuadraticForm& q);

struct WeilSum {
  std::complex<double> integral;  // i(L)
  Mu8Value gamma;
};

// Gauss integral over L = (+) p^{m_i} O with m_i the largest admissible
// exponent, minus `shrink` on the first coordinate.
WeilSum weil_index_sum(const std::vector<PadicNumber>& diag, int shrink = 0,
                       Exec exec = default_exec());
Mu8Value weil_index_oracle(const QuadraticForm& q, int shrink = 0);

Mu8Value gamma_ratio(const PadicNumber& a);

enum class LieSpace { H, HPrime, T, TPrime };
// Gram matrix of the trace pairing restricted to the space, in a fixed F-basis.
// T and TPrime are the tori through the standard n=1 rss points.
QuadraticForm space_form(LieSpace s, int n, const FieldConfig& cfg);
Mu8Value gamma_of_space(const QuadraticForm& q);

}  // namespace stransfer
