#pragma once

// Brute-force references for the local symbols. Everything here works with
// plain integers modulo small powers of p and never calls the library's
// closed forms.

#include <vector>

#include "stransfer/padic.hpp"

namespace oracle {

using stransfer::PadicNumber;
using stransfer::modp::pow;

// a -> a * p^(-2k) with valuation 0 or 1; returns (valuation, residue mod p^depth).
inline std::pair<int, int64_t> reduce_class(const PadicNumber& a, int depth) {
  int v = a.valuation();
  int r = ((v % 2) + 2) % 2;
  PadicNumber b = a.shifted(r - v);
  return {r, b.residue(depth)};
}

// (a,b) = 1 iff z^2 = a x^2 + b y^2 has a primitive solution modulo p^3.
// With a, b of valuation 0 or 1 every primitive solution mod p^3 has gradient
// of valuation at most 1, so it lifts.
inline int hilbert(const PadicNumber& a, const PadicNumber& b) {
  const int64_t p = a.prime();
  const int64_t m = pow(p, 3);
  auto [va, ra] = reduce_class(a, 3);
  auto [vb, rb] = reduce_class(b, 3);
  (void)va;
  (void)vb;
  std::vector<char> any_root(m, 0), unit_root(m, 0);
  for (int64_t z = 0; z < m; ++z) {
    int64_t s = z * z % m;
    any_root[s] = 1;
    if (z % p != 0) unit_root[s] = 1;
  }
  for (int64_t x = 0; x < m; ++x) {
    int64_t ax = ra * (x * x % m) % m;
    for (int64_t y = 0; y < m; ++y) {
      int64_t s = (ax + rb * (y * y % m)) % m;
      bool xy_unit = (x % p != 0) || (y % p != 0);
      if (xy_unit ? any_root[s] : unit_root[s]) return 1;
    }
  }
  return -1;
}

// Whether a is a norm from F(sqrt(Delta)): solve x^2 - Delta y^2 = a' mod
// p^(v(a')+2) with a' = a p^(-2k) of valuation 0 or 1 and x, y integral.
inline int norm_membership(const PadicNumber& a, const PadicNumber& delta) {
  const int64_t p = a.prime();
  auto [v, r] = reduce_class(a, 1);
  (void)r;
  int depth = v + 2;
  const int64_t m = pow(p, depth);
  int64_t target = a.shifted(v - a.valuation()).residue(depth);
  int64_t d = delta.residue(depth);
  std::vector<char> is_sq(m, 0);
  for (int64_t x = 0; x < m; ++x) is_sq[x * x % m] = 1;
  for (int64_t y = 0; y < m; ++y) {
    int64_t s = (target + d * (y * y % m)) % m;
    if (is_sq[s]) return 1;
  }
  return -1;
}

}  // namespace oracle
