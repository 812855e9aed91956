#pragma once

// Brute-force sums for n = 1 orbital integrals and Fourier transforms, with
// complex exponentials and direct membership tests.

#include <cmath>
#include <complex>
#include <numbers>

#include "stransfer/coset.hpp"

namespace oracle {

using stransfer::PadicNumber;
using cplx = std::complex<double>;

inline cplx psi_c(const PadicNumber& x) {
  if (x.is_zero() || x.valuation() >= 0) return 1.0;
  const int k = -x.valuation();
  const int64_t m = stransfer::modp::pow(x.prime(), k);
  const double t = static_cast<double>(((x.unit() % m) + m) % m) / static_cast<double>(m);
  return std::polar(1.0, 2 * std::numbers::pi * t);
}

inline bool member(const stransfer::Vec& x, const stransfer::Vec& c, const std::vector<int>& a) {
  for (size_t i = 0; i < x.size(); ++i) {
    PadicNumber d = x[i] - c[i];
    if (!d.is_zero() && d.valuation() < a[i]) return false;
  }
  return true;
}

// f(X) with the pairing taken from the Lie-algebra trace form.
inline cplx eval(const stransfer::CosetFunction& f, const stransfer::Vec& x) {
  const auto& sp = f.space();
  cplx s = 0;
  for (const auto& t : f.terms()) {
    if (!member(x, t.center, t.scale)) continue;
    PadicNumber ph = sp.side == stransfer::Side::S
                         ? stransfer::pairing(stransfer::s_element(t.chi, sp.n),
                                              stransfer::s_element(x, sp.n))
                         : stransfer::pairing(stransfer::s_prime_element(t.chi, sp.n, sp.cfg),
                                              stransfer::s_prime_element(x, sp.n, sp.cfg));
    s += t.coeff.to_complex() * psi_c(ph);
  }
  return s;
}

// Integral of f(X) psi(<X, Y>) over p^lo L0 on s at n = 1, cells p^hi L0.
inline cplx fourier_s1(const stransfer::CosetFunction& f, const stransfer::Vec& y, int lo, int hi) {
  const auto& cfg = f.space().cfg;
  const int64_t p = cfg.p;
  const int64_t m = stransfer::modp::pow(p, hi - lo);
  cplx s = 0;
  for (int64_t i = 0; i < m; ++i)
    for (int64_t j = 0; j < m; ++j) {
      stransfer::Vec x{PadicNumber::from_int(i, p, cfg.precision).shifted(lo),
                       PadicNumber::from_int(j, p, cfg.precision).shifted(lo)};
      cplx v = eval(f, x);
      if (v == cplx(0)) continue;
      s += v * psi_c(stransfer::pairing(stransfer::s_element(x, 1), stransfer::s_element(y, 1)));
    }
  return s * std::pow(static_cast<double>(p), -2.0 * hi);
}

// O^eta(X, f) at n = 1 on s: vol(O^x) = 1, units summed mod p^D, k in [-K, K].
inline cplx orbital_s1(const stransfer::LieSElement& x, const stransfer::CosetFunction& f,
                       int D, int K) {
  const auto& cfg = f.space().cfg;
  const int64_t p = cfg.p;
  const auto ext = cfg.extension();
  const bool ram = ext.ramified();
  const int eta_p = stransfer::eta(cfg.num(p), ext);
  const int64_t m = stransfer::modp::pow(p, D);
  cplx s = 0;
  for (int k = -K; k <= K; ++k) {
    cplx sk = 0;
    PadicNumber t = PadicNumber::from_parts(k, 1, p, cfg.precision);
    for (int64_t u = 1; u < m; ++u) {
      if (u % p == 0) continue;
      PadicNumber uu = cfg.num(u);
      stransfer::Vec v{uu * t * x.a1(0, 0), x.a2(0, 0) / (uu * t)};
      cplx val = eval(f, v);
      if (ram) val *= static_cast<double>(stransfer::modp::legendre(u % p, p));
      sk += val;
    }
    s += sk * ((eta_p == -1 && (k % 2 != 0)) ? -1.0 : 1.0);
  }
  return s / static_cast<double>(m / p * (p - 1));
}

// O(Y, f') at n = 1 on s': E^1 as w / wbar over units w of O_E mod p^D, plus
// the coset of -1 when E is ramified.
inline cplx orbital_sprime1(const stransfer::LieSPrimeElement& y,
                            const stransfer::CosetFunction& f, int D) {
  const auto& cfg = f.space().cfg;
  const int64_t p = cfg.p;
  const auto ext = cfg.extension();
  const int64_t m = stransfer::modp::pow(p, D);
  cplx s = 0;
  int64_t units = 0;
  for (int64_t a = 0; a < m; ++a)
    for (int64_t b = 0; b < m; ++b) {
      stransfer::ExtElement w(cfg.num(a), cfg.num(b), ext.delta_sq);
      if (w.norm().is_zero() || w.norm().valuation() > 0) continue;
      ++units;
      stransfer::ExtElement zb = w / w.conj() * y.b(0, 0);
      s += eval(f, {zb.re(), zb.im()});
      if (ext.ramified()) s += eval(f, {-zb.re(), -zb.im()});
    }
  return s / static_cast<double>(units);
}

// Signed count sum_L (-1)^{log_p [Z/p^a + Z/p^b : L]} over subgroups L.
inline int64_t signed_subgroups(int64_t p, int a, int b) {
  if (a > b) std::swap(a, b);
  auto geo = [&](int e) { return (stransfer::modp::pow(p, e + 1) - 1) / (p - 1); };
  int64_t s = 0;
  for (int k = 0; k <= a + b; ++k) {
    int64_t nk = k <= a ? geo(k) : (k <= b ? geo(a) : geo(a + b - k));
    s += ((a + b - k) % 2 == 0) ? nk : -nk;
  }
  return s;
}

// O^eta((1, diag(a1, a2)), f0) for unramified E from the Smith form of
// [[a1, x (a2 - a1)], [0, a2]] on each shell of x.
inline double split2_orbital(const PadicNumber& a1, const PadicNumber& a2) {
  const int64_t p = a1.prime();
  const int va = a1.valuation(), vb = a2.valuation();
  if (va < 0 || vb < 0) return 0;
  const int vd = (a2 - a1).valuation();
  const int M = va + vb + 6;
  double s = 0;
  for (int m = -vd; m <= M; ++m) {
    const int s1 = std::min({va, vb, m + vd});
    const double vol = std::pow(static_cast<double>(p), -m) * (m < M ? 1.0 - 1.0 / p : 1.0);
    s += vol * static_cast<double>(signed_subgroups(p, s1, va + vb - s1));
  }
  return s;
}

}  // namespace oracle
