#include "stransfer/orbit_matching.hpp"

#include <cmath>

namespace stransfer {

namespace {

// True for zero at full working precision, false for nonzero; anything in
// between cannot be decided.
bool decided_zero(const PadicNumber& x) {
  if (!x.is_zero()) return false;
  if (x.absolute_precision() >= x.cap()) return true;
  throw PrecisionError("indeterminate: value vanishes only to absolute precision " +
                       std::to_string(x.absolute_precision()));
}

using Poly = std::vector<PadicNumber>;

Poly derivative(const Poly& f) {
  Poly d;
  for (size_t i = 1; i < f.size(); ++i)
    d.push_back(f[i] * RingTraits<PadicNumber>::from_int(f[i], static_cast<int64_t>(i)));
  return d;
}

// f(r + p y) as a polynomial in y.
Poly taylor_shift(const Poly& f, const PadicNumber& r, int64_t p) {
  const size_t n = f.size();
  Poly g(n, RingTraits<PadicNumber>::zero_like(f[0]));
  // Horner on polynomials: g <- g * (r + p y) + f_i
  PadicNumber pp = RingTraits<PadicNumber>::from_int(f[0], p);
  for (size_t i = n; i-- > 0;) {
    Poly h(n, RingTraits<PadicNumber>::zero_like(f[0]));
    for (size_t j = 0; j < n; ++j) {
      if (g[j].is_exact_zero()) continue;
      h[j] += g[j] * r;
      if (j + 1 < n) h[j + 1] += g[j] * pp;
    }
    h[0] += f[i];
    g = std::move(h);
  }
  return g;
}

int min_valuation(const Poly& f) {
  int v = std::numeric_limits<int>::max();
  for (const auto& c : f)
    if (!c.is_zero()) v = std::min(v, c.valuation());
  return v;
}

void integral_roots(const Poly& g, int depth, std::vector<PadicNumber>& out) {
  const int64_t p = g[0].prime();
  const int cap = g[0].cap();
  if (depth >= cap) throw PrecisionError("root isolation exceeded working precision");
  Poly gd = derivative(g);
  for (int64_t r = 0; r < p; ++r) {
    PadicNumber rv = PadicNumber::from_int(r, p, cap);
    PadicNumber val = poly_eval(g, rv);
    if (!val.is_zero() && val.valuation() == 0) continue;
    PadicNumber dv = poly_eval(gd, rv);
    if (!dv.is_zero() && dv.valuation() == 0) {
      auto root = hensel_simple_root(g, r);
      if (root) out.push_back(*root);
      continue;
    }
    Poly h = taylor_shift(g, rv, p);
    int s = min_valuation(h);
    if (s == std::numeric_limits<int>::max()) throw PrecisionError("polynomial vanished");
    for (auto& c : h) c = c.shifted(-s);
    std::vector<PadicNumber> sub;
    integral_roots(h, depth + 1, sub);
    for (auto& y : sub) out.push_back(rv + y.shifted(1));
  }
}

// Divide monic f by (t - r).
Poly deflate(const Poly& f, const PadicNumber& r) {
  const size_t n = f.size() - 1;
  Poly q(n, RingTraits<PadicNumber>::zero_like(r));
  PadicNumber carry = f[n];
  for (size_t i = n; i-- > 0;) {
    q[i] = carry;
    carry = f[i] + carry * r;
  }
  return q;
}

}  // namespace

OrbitInvariant invariant(const LieSElement& x) {
  OrbitInvariant inv;
  inv.coeffs = (x.a1 * x.a2).charpoly();
  try {
    inv.regular = is_regular_semisimple(x);
  } catch (const PrecisionError&) {
    inv.regular = false;
  }
  return inv;
}

OrbitInvariant invariant(const LieSPrimeElement& y) {
  OrbitInvariant inv;
  ExtElement g(y.gamma, RingTraits<PadicNumber>::zero_like(y.gamma), y.b.proto().delta_sq());
  auto cp = (y.b * conj(y.b)).scaled(g).charpoly();
  for (const auto& c : cp) {
    if (!c.im().is_zero()) throw PrecisionError("invariant of s' element not in F");
    inv.coeffs.push_back(c.re());
  }
  try {
    inv.regular = is_regular_semisimple(y);
  } catch (const PrecisionError&) {
    inv.regular = false;
  }
  return inv;
}

PadicNumber discriminant(const std::vector<PadicNumber>& f) {
  const int n = static_cast<int>(f.size()) - 1;
  if (n <= 1) return RingTraits<PadicNumber>::one_like(f[0]);
  Poly d = derivative(f);
  const int sz = 2 * n - 1;
  MatF syl(sz, sz, RingTraits<PadicNumber>::zero_like(f[0]));
  // rows 0..n-2: shifts of f; rows n-1..2n-2: shifts of f'
  for (int r = 0; r < n - 1; ++r)
    for (int i = 0; i <= n; ++i) syl(r, r + i) = f[n - i];
  for (int r = 0; r < n; ++r)
    for (int i = 0; i <= n - 1; ++i) syl(n - 1 + r, r + i) = d[n - 1 - i];
  PadicNumber res = syl.det();
  if ((n * (n - 1) / 2) % 2 == 1) res = -res;
  return res / f[n];
}

bool is_regular_semisimple(const LieSElement& x) {
  if (decided_zero(x.a1.det()) || decided_zero(x.a2.det())) return false;
  return !decided_zero(discriminant((x.a1 * x.a2).charpoly()));
}

bool is_regular_semisimple(const LieSPrimeElement& y) {
  PadicNumber nd = y.b.det().norm();
  if (decided_zero(nd)) return false;
  ExtElement g(y.gamma, RingTraits<PadicNumber>::zero_like(y.gamma), y.b.proto().delta_sq());
  auto cp = (y.b * conj(y.b)).scaled(g).charpoly();
  Poly f;
  for (const auto& c : cp) f.push_back(c.re());
  return !decided_zero(discriminant(f));
}

std::vector<PadicNumber> roots_in_base(const std::vector<PadicNumber>& f_in) {
  Poly f = f_in;
  while (f.size() > 1 && f.back().is_zero()) f.pop_back();
  const int n = static_cast<int>(f.size()) - 1;
  if (n <= 0) return {};
  PadicNumber lc = f[n];
  for (auto& c : f) c = c / lc;
  // g(y) = p^{nk} f(y / p^k) is monic and integral.
  int k = 0;
  for (int i = 0; i < n; ++i)
    if (!f[i].is_zero() && f[i].valuation() < 0)
      k = std::max(k, static_cast<int>(std::ceil(-f[i].valuation() / double(n - i))));
  Poly g = f;
  for (int i = 0; i <= n; ++i) g[i] = f[i].shifted((n - i) * k);
  std::vector<PadicNumber> ys;
  integral_roots(g, 0, ys);
  for (auto& y : ys) y = y.shifted(-k);
  return ys;
}

const char* to_string(NormAnswer a) {
  switch (a) {
    case NormAnswer::Yes: return "true";
    case NormAnswer::No: return "false";
    case NormAnswer::Unsupported: return "unsupported";
  }
  return "?";
}

NormAnswer is_in_gamma_norm(const MatF& a, const PadicNumber& gamma, const QuadExtension& e) {
  Poly f = a.charpoly();
  if (decided_zero(f[0])) throw DomainError("is_in_gamma_norm: A is singular");
  if (decided_zero(discriminant(f))) throw DomainError("is_in_gamma_norm: A is not regular");
  auto roots = roots_in_base(f);
  bool ok = true;
  Poly rest = f;
  for (const auto& r : roots) {
    if (eta(r / gamma, e) != 1) ok = false;
    rest = deflate(rest, r);
  }
  const int m = static_cast<int>(rest.size()) - 1;
  if (m >= 4) return NormAnswer::Unsupported;
  if (m == 2) {
    PadicNumber d = discriminant(rest);
    bool splits_e = (d * e.delta_sq).is_square();
    if (!splits_e && eta(rest[0], e) != 1) ok = false;
  } else if (m == 3) {
    if (eta(-rest[0] / gamma.pow(3), e) != 1) ok = false;
  }
  return ok ? NormAnswer::Yes : NormAnswer::No;
}

bool matches(const LieSElement& x, const LieSPrimeElement& y) {
  if (!is_regular_semisimple(x) || !is_regular_semisimple(y))
    throw DomainError("matches: inputs must be regular semisimple");
  auto a = invariant(x).coeffs, b = invariant(y).coeffs;
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i)
    if (!decided_zero(a[i] - b[i])) return false;
  return true;
}

int eta_h(const HElement& h, const QuadExtension& e) {
  return eta(h.h1.det() * h.h2.det(), e);
}

int kappa(const LieSElement& x, const QuadExtension& e) {
  if (!is_regular_semisimple(x)) throw DomainError("kappa: not regular semisimple");
  return eta(x.a1.det(), e);
}

bool is_regular_semisimple_group(const MatF& x) {
  const int n = x.rows() / 2;
  Poly f = x.block(0, 0, n, n).charpoly();
  if (decided_zero(discriminant(f))) return false;
  PadicNumber one = RingTraits<PadicNumber>::one_like(x.proto());
  return !decided_zero(poly_eval(f, one)) && !decided_zero(poly_eval(f, -one));
}

int kappa_group(const MatF& x, const QuadExtension& e) {
  if (!is_regular_semisimple_group(x)) throw DomainError("kappa_group: not regular semisimple");
  const int n = x.rows() / 2;
  PadicNumber d = x.block(0, n, n, n).det();
  if (decided_zero(d)) throw DomainError("kappa_group: singular upper-right block");
  return eta(d, e);
}

}  // namespace stransfer
