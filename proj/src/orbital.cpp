#include "stransfer/orbital.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <limits>

#include "stransfer/orbit_matching.hpp"

namespace stransfer {

namespace {

constexpr int64_t kMaxEnumeration = 2'000'000'000;

bool in_ball(const PadicNumber& c, int a) {
  if (c.is_zero()) {
    if (c.absolute_precision() < a) throw PrecisionError("ball membership undecided");
    return true;
  }
  return c.valuation() >= a;
}

int vmin(const PadicNumber& x) {
  return x.is_zero() ? std::numeric_limits<int>::max() / 4 : x.valuation();
}

// x = A / p^k with A taken mod p^k, or k = 0 when x is integral.
void character_parts(const PadicNumber& x, int64_t* num, int* k) {
  *num = 0;
  *k = 0;
  if (x.is_zero() || x.valuation() >= 0) return;
  *k = -x.valuation();
  if (x.digits() < *k) throw PrecisionError("character coefficient lacks precision");
  *num = x.unit() % modp::pow(x.prime(), *k);
}

int64_t checked_pow(int64_t p, int e) {
  double approx = std::pow(static_cast<double>(p), e);
  if (approx > static_cast<double>(kMaxEnumeration))
    throw UnsupportedError("enumeration too large for this engine");
  return modp::pow(p, e);
}

PadicNumber ppow(int64_t p, int k, int cap) { return PadicNumber::from_parts(k, 1, p, cap); }

Rational quotient_volume_s(MeasureConvention m, int64_t p) {
  return m == MeasureConvention::IntegralModel ? Rational(1) : Rational(p - 1, p);
}

int parity_sign(int k) { return (k % 2 == 0) ? 1 : -1; }

}  // namespace

const char* to_string(MeasureConvention m) {
  return m == MeasureConvention::IntegralModel ? "integral-model" : "self-dual-exp";
}

const char* to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::Pass: return "pass";
    case CheckStatus::Fail: return "fail";
    default: return "inconclusive";
  }
}

double IntegralValue::real_factor() const {
  return std::pow(static_cast<double>(value.prime()), quarter_exp / 4.0);
}

std::complex<double> IntegralValue::to_complex() const {
  return value.to_complex() * real_factor();
}

IntegralValue orbital_n1(const LieSElement& x, const CosetFunction& f, bool twisted,
                         MeasureConvention m, Exec exec) {
  const LatticeSpace& sp = f.space();
  if (sp.side != Side::S || sp.n != 1 || x.n() != 1)
    throw DomainError("orbital_n1: needs n = 1 on s");
  const PadicNumber& x0 = x.a1(0, 0);
  const PadicNumber& y0 = x.a2(0, 0);
  if (x0.is_zero() || y0.is_zero()) throw DomainError("orbital_n1: not regular semisimple");
  const FieldConfig& cfg = sp.cfg;
  const int64_t p = cfg.p;
  const int cap = cfg.precision;
  const QuadExtension ext = cfg.extension();
  const int eta_p = twisted ? eta(cfg.num(p), ext) : 1;
  const bool legendre = twisted && ext.ramified();
  const int vx = x0.valuation(), vy = y0.valuation();
  const Rational qvol = quotient_volume_s(m, p);

  ExactScalar total(p);
  for (const auto& t : f.terms()) {
    const PadicNumber &c0 = t.center[0], &c1 = t.center[1];
    const int a0 = t.scale[0], a1 = t.scale[1];
    const bool c0in = in_ball(c0, a0), c1in = in_ball(c1, a1);
    int64_t kmin = c0in ? a0 - vx : c0.valuation() - vx;
    int64_t kmax = c1in ? vy - a1 : vy - c1.valuation();
    if (!c0in) kmax = std::min<int64_t>(kmax, kmin);
    if (!c1in) kmin = std::max<int64_t>(kmin, kmax);
    Cyclotomic acc(p);
    for (int64_t kk = kmin; kk <= kmax; ++kk) {
      const int k = static_cast<int>(kk);
      PadicNumber b0 = x0 * ppow(p, k, cap);
      PadicNumber b1 = y0 * ppow(p, -k, cap);
      int e = 0;
      int64_t r = 0;
      auto impose = [&](const PadicNumber& unit, int level) {
        int64_t res = unit.residue(level);
        if (e == 0) {
          e = level;
          r = res;
          return true;
        }
        int lo = std::min(e, level);
        int64_t mlo = modp::pow(p, lo);
        if ((r - res) % mlo != 0) return false;
        if (level > e) {
          e = level;
          r = res;
        }
        return true;
      };
      const int e1 = vx + k, e2 = vy - k;
      if (e1 >= a0) {
        if (!c0in) continue;
      } else {
        if (c0in || c0.valuation() != e1) continue;
        if (!impose(c0 / b0, a0 - e1)) continue;
      }
      if (e2 >= a1) {
        if (!c1in) continue;
      } else {
        if (c1in || c1.valuation() != e2) continue;
        if (!impose(b1 / c1, a1 - e2)) continue;
      }
      // phase = g0 w0 X1 + g1 w1 X0 with X0 = u b0, X1 = u^-1 b1
      PadicNumber alpha = sp.g[1] * t.chi[1] * b0;
      PadicNumber beta = sp.g[0] * t.chi[0] * b1;
      UnitSum us;
      us.e = e;
      us.r = r;
      us.legendre_sign = legendre;
      character_parts(alpha, &us.alpha, &us.ka);
      character_parts(beta, &us.beta, &us.kb);
      us.d = std::max({1, e, us.ka, us.kb});
      const int64_t units = checked_pow(p, us.d) / p * (p - 1);
      auto hist = unit_sum_histogram(p, us, exec);
      Rational w = qvol / Rational(units) * parity_sign(eta_p == 1 ? 0 : k);
      acc += Cyclotomic::from_counts(p, std::max(us.ka, us.kb), std::move(hist), w);
    }
    total += t.coeff * ExactScalar(acc);
  }
  IntegralValue out;
  out.value = total;
  return out;
}

IntegralValue orbital_n1_prime(const LieSPrimeElement& y, const CosetFunction& f,
                               MeasureConvention m, Exec exec) {
  const LatticeSpace& sp = f.space();
  if (sp.side != Side::SPrime || sp.n != 1 || y.n() != 1)
    throw DomainError("orbital_n1_prime: needs n = 1 on s'");
  const ExtElement b = y.b(0, 0);
  if (b.is_zero()) throw DomainError("orbital_n1_prime: not regular semisimple");
  const FieldConfig& cfg = sp.cfg;
  const int64_t p = cfg.p;
  const QuadExtension ext = cfg.extension();
  const bool ram = ext.ramified();
  if (m == MeasureConvention::SelfDualExp && ram)
    throw UnsupportedError("self-dual exp measure on E^x / F^x needs unramified E");

  const int vb = std::min(vmin(b.re()), vmin(b.im()));
  const int gmin = *std::min_element(sp.gval.begin(), sp.gval.end());
  int d = 1, K = 0;
  for (const auto& t : f.terms()) {
    for (int a : t.scale) d = std::max(d, a - vb);
    int vw = std::numeric_limits<int>::max() / 4;
    for (const auto& w : t.chi) vw = std::min(vw, vmin(w));
    if (vw < std::numeric_limits<int>::max() / 8) {
      d = std::max(d, -(vw + vb + gmin));
      K = std::max(K, -(vw + vb + gmin));
    }
  }
  const int64_t pd = checked_pow(p, d);
  const int64_t total = ram ? 2 * pd : pd + pd / p;
  const int64_t mod = checked_pow(p, K);
  const size_t nterms = f.terms().size();
  const PadicNumber one = cfg.num(1);
  const PadicNumber& delta = ext.delta_sq;

  auto rep = [&](int64_t i) {
    PadicNumber re = one, im = one;
    bool flip = false;
    if (ram) {
      flip = i >= pd;
      im = cfg.num(flip ? i - pd : i);
    } else if (i < pd) {
      re = cfg.num(i);
    } else {
      im = cfg.num(p * (i - pd));
    }
    ExtElement w(re, im, delta);
    ExtElement z = w / w.conj();
    return flip ? -z : z;
  };
  auto body = [&](int64_t i, std::vector<std::vector<int64_t>>& h) {
    ExtElement zb = rep(i) * b;
    Vec v{zb.re(), zb.im()};
    CharacterValue cv;
    for (size_t j = 0; j < nterms; ++j) {
      if (!term_value(sp, f.terms()[j], v, &cv)) continue;
      if (cv.level() > K) throw PrecisionError("orbital_n1_prime: character level above bound");
      int64_t idx = cv.num() * modp::pow(p, K - cv.level()) % mod;
      h[j][static_cast<size_t>((idx + mod) % mod)] += 1;
    }
  };
  std::vector<std::vector<int64_t>> hist(nterms, std::vector<int64_t>(static_cast<size_t>(mod), 0));
  if (exec == Exec::Serial) {
    for (int64_t i = 0; i < total; ++i) body(i, hist);
  } else {
    std::string error;
#pragma omp parallel
    {
      std::vector<std::vector<int64_t>> local(nterms,
                                              std::vector<int64_t>(static_cast<size_t>(mod), 0));
#pragma omp for schedule(static)
      for (int64_t i = 0; i < total; ++i) {
        try {
          body(i, local);
        } catch (const std::exception& ex) {
#pragma omp critical
          if (error.empty()) error = ex.what();
        }
      }
#pragma omp critical
      for (size_t j = 0; j < nterms; ++j)
        for (size_t k = 0; k < local[j].size(); ++k) hist[j][k] += local[j][k];
    }
    if (!error.empty()) throw PrecisionError(error);
  }
  Rational weight = ram ? Rational(1, pd) : Rational(1, pd + pd / p);
  if (m == MeasureConvention::SelfDualExp) weight *= Rational(p + 1, p);
  ExactScalar out(p);
  for (size_t j = 0; j < nterms; ++j)
    out += f.terms()[j].coeff * ExactScalar(Cyclotomic::from_counts(p, K, hist[j], weight));
  IntegralValue v;
  v.value = out;
  return v;
}

IntegralValue normalized(const IntegralValue& v, const AbsValue& disc) {
  IntegralValue r = v;
  r.quarter_exp -= disc.twice_exponent;
  return r;
}

IntegralValue fourier_orbital(const LieSElement& x, const CosetFunction& f, MeasureConvention m,
                              Exec exec) {
  return normalized(orbital_n1(x, f.fourier(), true, m, exec), disc_factor(x));
}

IntegralValue fourier_orbital(const LieSPrimeElement& y, const CosetFunction& f,
                              MeasureConvention m, Exec exec) {
  return normalized(orbital_n1_prime(y, f.fourier(), m, exec), disc_factor(y));
}

TruncatedOrbital truncated_orbital(const LieSElement& x, int depth, int64_t max_lattices) {
  const int n = x.n();
  if (n > 2) throw UnsupportedError("truncated_orbital: n <= 2 only");
  if (!is_regular_semisimple(x)) throw DomainError("truncated_orbital: not regular semisimple");
  const PadicNumber& proto = x.a1.proto();
  const int64_t p = proto.prime();
  const int cap = proto.cap();
  PadicNumber det1 = x.a1.det();
  if (det1.is_zero()) throw DomainError("truncated_orbital: A1 is singular");
  // O^eta(X, f0) = eta(det A1) O^eta((1, D), f0) with D the eigenvalues of A2 A1.
  std::vector<PadicNumber> ev;
  if (n == 1) {
    ev.push_back(x.a1(0, 0) * x.a2(0, 0));
  } else {
    ev = roots_in_base((x.a2 * x.a1).charpoly());
    if (ev.size() != 2) throw UnsupportedError("truncated_orbital: A2 A1 is not split");
  }
  TruncatedOrbital out;
  out.depth = depth;
  const int sign1 = parity_sign(det1.valuation());
  int vdet = 0;
  bool integral = true;
  for (const auto& a : ev) {
    if (a.valuation() < 0) integral = false;
    vdet += a.valuation();
  }
  out.needed_depth = std::max(0, vdet);
  out.value.value = ExactScalar(p);
  out.value.complete = !integral || depth >= vdet;
  out.value.error_bound = out.value.complete ? 0 : std::numeric_limits<double>::infinity();
  if (!integral) return out;

  if (n == 1) {
    int64_t s = 0;
    for (int j = 0; j <= std::min(depth, vdet); ++j) s += parity_sign(j);
    out.lattices = std::min(depth, vdet) + 1;
    out.value.value = ExactScalar::rational(p, Rational(sign1 * s));
    return out;
  }

  const PadicNumber a1 = ev[0], a2 = ev[1];
  const PadicNumber dd = a2 - a1;
  const int vd = dd.valuation();
  const int mlo = -vd;
  const int mtail = std::min(a1.valuation(), a2.valuation()) - vd;
  const int jmax = std::min(depth, vdet);
  Rational acc = 0;
  for (int mm = mlo; mm <= mtail; ++mm) {
    const PadicNumber xd = ppow(p, mm, cap) * dd;
    // rows (a1, x d) and (0, a2) of N_x
    int64_t s = 0;
    for (int i = 0; i <= jmax; ++i) {
      if (a1.valuation() < i) continue;
      PadicNumber r1 = a1 / ppow(p, i, cap);
      for (int j = 0; i + j <= jmax; ++j) {
        const int64_t pj = modp::pow(p, j);
        out.lattices += pj;
        if (out.lattices > max_lattices)
          throw UnsupportedError("truncated_orbital: lattice budget exceeded");
        if (a2.valuation() < j) continue;
        for (int64_t c = 0; c < pj; ++c) {
          PadicNumber rest = xd - r1 * PadicNumber::from_int(c, p, cap);
          if (!rest.is_zero() && rest.valuation() < j) continue;
          s += parity_sign(i + j);
        }
      }
    }
    Rational vol = (mm < mtail) ? rational_ppow(p, -mm) * Rational(p - 1, p) : rational_ppow(p, -mm);
    acc += vol * s;
  }
  out.value.value = ExactScalar::rational(p, acc * sign1);
  return out;
}

FundLemmaRow fund_lemma_check(const PadicNumber& a, const FieldConfig& cfg, Exec exec) {
  const QuadExtension ext = cfg.extension();
  if (ext.ramified() || !(cfg.gamma == cfg.num(1)))
    throw UnsupportedError("fundamental lemma check needs gamma = 1 and E unramified");
  if (a.is_zero()) throw DomainError("fund_lemma_check: invariant must be nonzero");
  FundLemmaRow row;
  row.n = 1;
  row.a = {a};
  LieSElement x = LieSElement::n1(cfg.num(1), a);
  const int k = kappa(x, ext);
  LatticeSpace s = LatticeSpace::make(Side::S, 1, cfg);
  row.lhs = orbital_n1(x, CosetFunction::standard(s), true, MeasureConvention::IntegralModel, exec);
  if (k != 1) row.lhs.value = -row.lhs.value;
  row.in_norm = eta(a, ext) == 1;
  if (row.in_norm) {
    auto b = norm_preimage(a, ext);
    if (!b) throw PrecisionError("fund_lemma_check: norm preimage not found");
    LieSPrimeElement y = LieSPrimeElement::n1(*b, cfg.gamma);
    LatticeSpace sp = LatticeSpace::make(Side::SPrime, 1, cfg);
    row.rhs = orbital_n1_prime(y, CosetFunction::standard(sp), MeasureConvention::IntegralModel,
                               exec);
    row.status = (row.lhs.value == row.rhs->value) ? CheckStatus::Pass : CheckStatus::Fail;
  } else {
    row.note = "no matching Y; left side must vanish";
    row.status = row.lhs.value.is_zero() ? CheckStatus::Pass : CheckStatus::Fail;
  }
  return row;
}

FundLemmaRow fund_lemma_check_split2(const PadicNumber& a1, const PadicNumber& a2,
                                     const FieldConfig& cfg, int depth) {
  const QuadExtension ext = cfg.extension();
  if (ext.ramified() || !(cfg.gamma == cfg.num(1)))
    throw UnsupportedError("fundamental lemma check needs gamma = 1 and E unramified");
  FundLemmaRow row;
  row.n = 2;
  row.a = {a1, a2};
  MatF one = MatF::identity(2, cfg.num(1));
  MatF d = MatF::diag({a1, a2});
  row.in_norm = is_in_gamma_norm(d, cfg.gamma, ext) == NormAnswer::Yes;
  TruncatedOrbital t = truncated_orbital(LieSElement{one, d}, depth);
  row.lhs = t.value;
  if (!t.value.complete) {
    row.note = "truncation depth below v(det A)";
    row.status = CheckStatus::Inconclusive;
  } else if (!row.in_norm) {
    row.note = "no matching Y; left side must vanish";
    row.status = row.lhs.value.is_zero() ? CheckStatus::Pass : CheckStatus::Fail;
  } else {
    row.note = "matching side not evaluated at n = 2";
    row.status = CheckStatus::Inconclusive;
  }
  return row;
}

std::vector<FundLemmaRow> fund_lemma_grid(const FieldConfig& cfg, int j_min, int j_max,
                                          const std::vector<int64_t>& units, Exec exec) {
  std::vector<FundLemmaRow> rows;
  for (int j = j_min; j <= j_max; ++j)
    for (int64_t u : units)
      rows.push_back(fund_lemma_check(PadicNumber::from_parts(j, u, cfg.p, cfg.precision), cfg, exec));
  return rows;
}

}  // namespace stransfer
