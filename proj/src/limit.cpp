#include <cmath>

#include "stransfer/orbit_matching.hpp"
#include "stransfer/orbital.hpp"

namespace stransfer {

namespace {

LieSElement bracket_h(const MatF& z1, const MatF& z2, const LieSElement& x) {
  return {z1 * x.a1 - x.a1 * z2, z2 * x.a2 - x.a2 * z1};
}

LieSPrimeElement bracket_h(const MatE& q, const LieSPrimeElement& x) {
  return {q * x.b - x.b * conj(q), x.gamma};
}

Mu8Value weil_of_gram(const MatF& g, int expected_rank) {
  for (int i = 0; i < g.rows(); ++i)
    for (int j = 0; j < i; ++j)
      if (!(g(i, j) == g(j, i))) throw DomainError("gamma_pair: q is not symmetric");
  auto diag = diagonalize_nondegenerate_part(QuadraticForm{g});
  if (static_cast<int>(diag.size()) != expected_rank)
    throw DomainError("gamma_pair: degenerate form, inputs not regular in a common Cartan");
  return weil_index_sum(diag).gamma;
}

int floor_half(int v) { return v >= 0 ? v / 2 : -((-v + 1) / 2); }

std::complex<double> psi_complex(const PadicNumber& x) {
  return Cyclotomic::character(psi(x)).to_complex();
}

template <class Elem, class Orbital>
KernelValue kernel_loop(const Elem& x, const Elem& y, const LatticeSpace& space, int a_start,
                        int a_floor, int sign, Orbital orbital) {
  const int64_t p = space.prime();
  const Vec yc = coords(y);
  KernelValue out;
  std::optional<ExactScalar> prev;
  ExactScalar cur(p);
  int a = std::min(a_start, a_floor);
  for (; a <= a_floor; ++a) {
    CosetFunction ball = CosetFunction::ball(space, yc, a);
    ExactScalar v = orbital(x, ball.fourier());
    int h = 0;
    for (int j = 0; j < space.dim(); ++j) h += 2 * a + space.gval[j];
    cur = v * ExactScalar::sqrt_p_power(p, h);
    if (prev && *prev == cur) {
      out.stabilized = true;
      break;
    }
    prev = cur;
  }
  out.ball_scale = std::min(a, a_floor);
  out.exact.value = sign == 1 ? cur : -cur;
  out.exact.quarter_exp = -disc_factor(x).twice_exponent - disc_factor(y).twice_exponent;
  out.value = out.exact.to_complex();
  return out;
}

}  // namespace

std::optional<PadicNumber> padic_sqrt(const PadicNumber& c) {
  if (c.is_zero()) return c;
  if (!c.is_square()) return std::nullopt;
  const int64_t p = c.prime();
  const int64_t u = c.unit();
  int64_t r0 = 1;
  while (r0 < p && (r0 * r0 - u % p) % p != 0) ++r0;
  PadicNumber U = PadicNumber::from_parts(0, u, p, c.cap(), c.digits());
  std::vector<PadicNumber> f{-U, PadicNumber::zero(p, c.cap()), PadicNumber::from_int(1, p, c.cap())};
  auto root = hensel_simple_root(f, r0);
  if (!root) return std::nullopt;
  return root->shifted(c.valuation() / 2);
}

Mu8Value gamma_pair(const LieSElement& x, const LieSElement& y) {
  const int n = x.n();
  const PadicNumber zero = RingTraits<PadicNumber>::zero_like(x.a1.proto());
  const PadicNumber one = RingTraits<PadicNumber>::one_like(zero);
  const int nn = n * n;
  std::vector<LieSElement> bx, by;
  for (int k = 0; k < 2 * nn; ++k) {
    MatF z1(n, n, zero), z2(n, n, zero);
    ((k < nn) ? z1 : z2)((k % nn) / n, k % n) = one;
    bx.push_back(bracket_h(z1, z2, x));
    by.push_back(-bracket_h(z1, z2, y));
  }
  MatF g(2 * nn, 2 * nn, zero);
  for (int k = 0; k < 2 * nn; ++k)
    for (int l = 0; l < 2 * nn; ++l) g(k, l) = pairing(bx[k], by[l]);
  return weil_of_gram(g, 2 * nn - n);
}

Mu8Value gamma_pair(const LieSPrimeElement& x, const LieSPrimeElement& y) {
  const int n = x.n();
  const ExtElement ez = RingTraits<ExtElement>::zero_like(x.b.proto());
  const PadicNumber zero = ez.re();
  const PadicNumber one = RingTraits<PadicNumber>::one_like(zero);
  const int nn = n * n;
  std::vector<LieSPrimeElement> bx, by;
  for (int k = 0; k < 2 * nn; ++k) {
    MatE q(n, n, ez);
    q((k % nn) / n, k % n) = (k < nn) ? ExtElement(one, zero, ez.delta_sq())
                                      : ExtElement(zero, one, ez.delta_sq());
    bx.push_back(bracket_h(q, x));
    LieSPrimeElement t = bracket_h(q, y);
    by.push_back({-t.b, t.gamma});
  }
  MatF g(2 * nn, 2 * nn, zero);
  for (int k = 0; k < 2 * nn; ++k)
    for (int l = 0; l < 2 * nn; ++l) g(k, l) = pairing(bx[k], by[l]);
  return weil_of_gram(g, 2 * nn - n);
}

KernelValue measured_kernel(const LieSElement& x, const LieSElement& y, const FieldConfig& cfg,
                            int a_floor, Exec exec) {
  if (x.n() != 1 || y.n() != 1) throw UnsupportedError("measured_kernel: n = 1 only");
  const PadicNumber &y1 = y.a1(0, 0), &y2 = y.a2(0, 0);
  const int vymin = std::min(y1.valuation(), y2.valuation());
  const int vymax = std::max(y1.valuation(), y2.valuation());
  const int vl = floor_half((x.a1(0, 0) * x.a2(0, 0)).valuation() - (y1 * y2).valuation());
  const int a_start = std::max(1 + vymax, 1 - vl - vymin);
  LatticeSpace space = LatticeSpace::make(Side::S, 1, cfg);
  const int k = kappa(y, cfg.extension());
  return kernel_loop(x, y, space, a_start, a_floor, k,
                     [&](const LieSElement& e, const CosetFunction& f) {
                       return orbital_n1(e, f, true, MeasureConvention::SelfDualExp, exec).value;
                     });
}

KernelValue measured_kernel(const LieSPrimeElement& x, const LieSPrimeElement& y,
                            const FieldConfig& cfg, int a_floor, Exec exec) {
  if (x.n() != 1 || y.n() != 1) throw UnsupportedError("measured_kernel: n = 1 only");
  LatticeSpace space = LatticeSpace::make(Side::SPrime, 1, cfg);
  if (!space.self_dual())
    throw UnsupportedError("measured_kernel on s' needs a self-dual lattice (E unramified, gamma a unit)");
  const ExtElement &bx = x.b(0, 0), &by = y.b(0, 0);
  int vymin = 1 << 20, vymax = -(1 << 20);
  for (const auto& c : {by.re(), by.im()}) {
    if (c.is_zero()) continue;
    vymin = std::min(vymin, c.valuation());
    vymax = std::max(vymax, c.valuation());
  }
  const int vl = floor_half(bx.norm().valuation() - by.norm().valuation());
  const int a_start = std::max(1 + vymax, 1 - vl - vymin);
  return kernel_loop(x, y, space, a_start, a_floor, 1,
                     [&](const LieSPrimeElement& e, const CosetFunction& f) {
                       return orbital_n1_prime(e, f, MeasureConvention::SelfDualExp, exec).value;
                     });
}

LimitRhs limit_rhs(const LieSElement& x, const LieSElement& y, const PadicNumber& mu,
                   const FieldConfig& cfg) {
  const QuadExtension ext = cfg.extension();
  const PadicNumber &x1 = x.a1(0, 0), &x2 = x.a2(0, 0), &y1 = y.a1(0, 0), &y2 = y.a2(0, 0);
  LimitRhs out;
  auto lam = padic_sqrt(x1 * x2 / (y1 * y2));
  if (!lam) return out;
  out.conjugate = true;
  for (const PadicNumber& l : {*lam, -*lam}) {
    LieSElement xp = LieSElement::n1(l * y1, l * y2);
    PadicNumber s = l * y1 / x1;
    LieSElement mx = xp.scaled(mu);
    out.value += static_cast<double>(eta(s, ext)) * gamma_pair(mx, y).value() *
                 psi_complex(pairing(mx, y));
    ++out.terms;
  }
  out.value *= static_cast<double>(kappa(y, ext));
  return out;
}

LimitRhs limit_rhs(const LieSPrimeElement& x, const LieSPrimeElement& y, const PadicNumber& mu,
                   const FieldConfig& cfg) {
  (void)cfg;
  const ExtElement &bx = x.b(0, 0), &by = y.b(0, 0);
  LimitRhs out;
  auto lam = padic_sqrt(bx.norm() / by.norm());
  if (!lam) return out;
  out.conjugate = true;
  for (const PadicNumber& l : {*lam, -*lam}) {
    LieSPrimeElement mx = y.scaled(l * mu);
    out.value += gamma_pair(mx, y).value() * psi_complex(pairing(mx, y));
    ++out.terms;
  }
  return out;
}

namespace {

template <class Elem>
LimitPoint limit_point(const Elem& x, const Elem& y, const PadicNumber& mu,
                       const FieldConfig& cfg, double tol, Exec exec) {
  LimitPoint pt;
  pt.v_mu = mu.valuation();
  KernelValue k = measured_kernel(x.scaled(mu), y, cfg, cfg.precision - 2, exec);
  LimitRhs r = limit_rhs(x, y, mu, cfg);
  pt.conjugate = r.conjugate;
  pt.lhs = k.value;
  pt.rhs = r.value;
  pt.deviation = std::abs(k.value - r.value);
  pt.ball_scale = k.ball_scale;
  pt.stabilized = k.stabilized;
  pt.lhs_exact_zero = k.exact.value.is_zero();
  pt.pass = k.stabilized && (r.conjugate ? pt.deviation <= tol : pt.lhs_exact_zero);
  return pt;
}

template <class Elem>
LimitSearch limit_search(const Elem& x, const Elem& y, int64_t mu_unit, int v_max,
                         const FieldConfig& cfg, double tol, Exec exec) {
  LimitSearch out;
  for (int v = 1; v <= v_max; v *= 2) {
    PadicNumber mu = PadicNumber::from_parts(-v, mu_unit, cfg.p, cfg.precision);
    out.trail.push_back(limit_point(x, y, mu, cfg, tol, exec));
    const size_t m = out.trail.size();
    if (m >= 2 && out.trail[m - 1].pass && out.trail[m - 2].pass) {
      out.found = true;
      out.N = -out.trail[m - 2].v_mu;
      break;
    }
  }
  out.status = out.found ? CheckStatus::Pass : CheckStatus::Inconclusive;
  return out;
}

}  // namespace

LimitPoint limit_formula_at(const LieSElement& x, const LieSElement& y, const PadicNumber& mu,
                            const FieldConfig& cfg, double tol, Exec exec) {
  return limit_point(x, y, mu, cfg, tol, exec);
}

LimitPoint limit_formula_at(const LieSPrimeElement& x, const LieSPrimeElement& y,
                            const PadicNumber& mu, const FieldConfig& cfg, double tol,
                            Exec exec) {
  return limit_point(x, y, mu, cfg, tol, exec);
}

LimitSearch limit_formula_check(const LieSElement& x, const LieSElement& y, int64_t mu_unit,
                                int v_max, const FieldConfig& cfg, double tol, Exec exec) {
  return limit_search(x, y, mu_unit, v_max, cfg, tol, exec);
}

LimitSearch limit_formula_check(const LieSPrimeElement& x, const LieSPrimeElement& y,
                                int64_t mu_unit, int v_max, const FieldConfig& cfg, double tol,
                                Exec exec) {
  return limit_search(x, y, mu_unit, v_max, cfg, tol, exec);
}

ScalingCheck limit_scaling_check(const LieSElement& x, const LieSElement& y,
                                 const PadicNumber& mu, const FieldConfig& cfg, double tol,
                                 Exec exec) {
  ScalingCheck out;
  out.direct = measured_kernel(x, y.scaled(mu), cfg, cfg.precision - 2, exec).value;
  out.predicted = static_cast<double>(eta(mu, cfg.extension())) *
                  measured_kernel(x.scaled(mu), y, cfg, cfg.precision - 2, exec).value;
  out.deviation = std::abs(out.direct - out.predicted);
  out.pass = out.deviation <= tol;
  return out;
}

CrossSideReport cross_side_check(const ExtElement& b, const PadicNumber& r,
                                 const FieldConfig& cfg) {
  const QuadExtension ext = cfg.extension();
  const PadicNumber& gamma = cfg.gamma;
  const PadicNumber zero = cfg.zero();
  auto emb = [&](const PadicNumber& a) { return ExtElement(a, zero, ext.delta_sq); };
  CrossSideReport out;
  out.y = LieSPrimeElement::n1(b, gamma);
  out.x = LieSElement::n1(cfg.num(1), gamma * b.norm());
  MatE conj_x = MatE::diag({emb(cfg.num(1)), emb(gamma) * b});
  MatE conj_inv = conj_x.inverse();
  MatE ax = conj_x * out.y.to_block() * conj_inv;
  MatF xf = out.x.to_block();
  MatE xb(2, 2, emb(zero));
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) xb(i, j) = emb(xf(i, j));
  out.conjugator_ok = ax == xb;
  out.v = out.y.scaled(r);
  MatE au = conj_x * out.v.to_block() * conj_inv;
  if (!au(0, 1).in_base_field() || !au(1, 0).in_base_field())
    throw DomainError("cross_side_check: Ad(x) V is not F-rational");
  out.u = LieSElement::n1(au(0, 1).re(), au(1, 0).re());
  out.pairing_equal = pairing(out.x, out.u) == pairing(out.y, out.v);
  out.disc_equal = disc_factor(out.x) == disc_factor(out.y);
  out.gamma_xu = gamma_pair(out.x, out.u);
  out.gamma_yv = gamma_pair(out.y, out.v);
  out.space_ratio = gamma_of_space(space_form(LieSpace::H, 1, cfg)) *
                    gamma_of_space(space_form(LieSpace::HPrime, 1, cfg)).inverse();
  // alpha(X) alpha(U) = 2 <X, U> for commuting X, U at n = 1
  out.eta_alpha = eta(cfg.num(2) * pairing(out.x, out.u), ext);
  out.gamma_identity = out.gamma_xu == out.space_ratio * out.gamma_yv;
  out.gamma_identity_eta =
      out.gamma_xu == out.space_ratio * out.gamma_yv * Mu8Value(out.eta_alpha == 1 ? 0 : 4);
  return out;
}

}  // namespace stransfer
