#pragma once

// Invariants of H- and H'-orbits, regularity, matching and transfer factors.

#include <vector>

#include "stransfer/symmetric_pairs.hpp"

namespace stransfer {

struct OrbitInvariant {
  std::vector<PadicNumber> coeffs;  // monic, low to high
  bool regular = false;
};

// charpoly(A1 A2) on s, charpoly(gamma B Bbar) on s'.
OrbitInvariant invariant(const LieSElement& x);
OrbitInvariant invariant(const LieSPrimeElement& y);

// Discriminant of a monic polynomial via the Sylvester resultant of f and f'.
PadicNumber discriminant(const std::vector<PadicNumber>& f);

// Throws PrecisionError when the answer depends on digits beyond the working
// precision.
bool is_regular_semisimple(const LieSElement& x);
bool is_regular_semisimple(const LieSPrimeElement& y);

// All roots in F of a separable polynomial (low to high coefficients).
std::vector<PadicNumber> roots_in_base(const std::vector<PadicNumber>& f);

enum class NormAnswer { No = 0, Yes = 1, Unsupported = 2 };
const char* to_string(NormAnswer a);

// Decides A in gamma N(GL_n(E)) for regular semisimple A through the factor
// fields of charpoly(A).
NormAnswer is_in_gamma_norm(const MatF& a, const PadicNumber& gamma, const QuadExtension& e);

// invariant(X) == invariant(Y) for rss X and Y.
bool matches(const LieSElement& x, const LieSPrimeElement& y);

// eta(det h1 det h2).
int eta_h(const HElement& h, const QuadExtension& e);
// eta(det A1).
int kappa(const LieSElement& x, const QuadExtension& e);

// Group side: x in S = {g eps g^-1 eps}; eta(det) of the upper-right block.
// Regular semisimple when the invariant charpoly of the upper-left block is
// separable and has neither 1 nor -1 as a root.
bool is_regular_semisimple_group(const MatF& x);
int kappa_group(const MatF& x, const QuadExtension& e);

}  // namespace stransfer
