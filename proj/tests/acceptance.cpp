// Acceptance run: one PASS/FAIL line per criterion. Exit status is 0 only when
// every selected criterion passes; --report-only always exits 0. Optional
// arguments select criteria by number.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstring>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "oracles_padic.hpp"
#include "oracles_weil.hpp"
#include "stransfer/nilpotent.hpp"
#include "stransfer/orbit_matching.hpp"
#include "stransfer/orbital.hpp"
#include "test_util.hpp"

using namespace stransfer;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

PadicNumber rnd(std::mt19937_64& rng, const FieldConfig& f, int vmin, int vmax) {
  return testutil::random_nonzero(rng, f, vmin, vmax);
}

Vec random_vec(std::mt19937_64& rng, const FieldConfig& f, int dim, int vmin, int vmax) {
  Vec v;
  for (int i = 0; i < dim; ++i) v.push_back(rnd(rng, f, vmin, vmax));
  return v;
}

MatF random_gl(std::mt19937_64& rng, const FieldConfig& f, int n) {
  for (;;) {
    MatF m(n, n, f.zero());
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) m(i, j) = rnd(rng, f, 0, 1);
    if (!m.det().is_zero()) return m;
  }
}

// 1. printed table against the matrix oracle, n <= 5
Outcome nilpotent_table() {
  auto rows = nilpotent_scan(1, 5, 5, default_exec());
  int bad = 0, r_bad = 0;
  std::string first;
  for (const auto& row : rows) {
    if (row.printed.r != row.oracle.s.r) ++r_bad;
    if (!row.printed.same_totals(row.oracle.s)) {
      if (first.empty()) first = row.sp.to_string();
      ++bad;
    }
  }
  std::ostringstream os;
  os << rows.size() << " partitions, " << bad << " differ in m (r differs in " << r_bad << ")";
  if (bad) os << ", first " << first;
  return {bad == 0, os.str()};
}

// 2. r >= n, r + m > n^2 + n/2, r = n only for one block; n <= 8
Outcome nilpotent_inequalities() {
  auto rows = nilpotent_scan(1, 8, 8, default_exec());
  int checked = 0, bad = 0;
  for (const auto& row : rows) {
    if (row.ineq.skipped) continue;
    ++checked;
    if (!row.ineq.ok() || !row.has_oracle) ++bad;
  }
  std::ostringstream os;
  os << checked << " nonzero classes, " << bad << " violations";
  return {bad == 0 && checked > 0, os.str()};
}

// 3. s'-side identities for every Jordan type, n <= 3
Outcome dprime_identities() {
  int checked = 0, bad = 0;
  for (int n = 1; n <= 3; ++n)
    for (const auto& jt : integer_partitions(n)) {
      auto d = dprime_oracle(jt);
      ++checked;
      if (!dprime_invariants(d).ok()) ++bad;
    }
  std::ostringstream os;
  os << checked << " Jordan types, " << bad << " failures";
  return {bad == 0, os.str()};
}

// Gauss integral of one coordinate on p^m O, summed at its own exact depth.
std::complex<double> gauss_1(const PadicNumber& a, int m) {
  const int K = std::max(1, -(a.valuation() + 2 * m));
  return oracle::gauss_integral({a}, {m}, K);
}

// 4. Weil index suite
Outcome weil_suite() {
  std::mt19937_64 rng(4);
  int forms = 0, bad = 0;
  double worst = 0;
  for (int64_t p : {3, 5, 7}) {
    auto f = FieldConfig::make(p, 10);
    for (int i = 0; i < 40; ++i) {
      const int dim = 1 + i % 3;
      std::vector<PadicNumber> d;
      for (int j = 0; j < dim; ++j) d.push_back(rnd(rng, f, -3, 2));
      std::complex<double> z0 = 1, z1 = 1;
      for (int j = 0; j < dim; ++j) {
        const int m = static_cast<int>(std::floor(-d[j].valuation() / 2.0));
        z0 *= gauss_1(d[j], m);
        z1 *= gauss_1(d[j], j == 0 ? m - 1 : m);
      }
      auto g0 = Mu8Value::snap(z0), g1 = Mu8Value::snap(z1);
      worst = std::max({worst, std::abs(z0 / std::abs(z0) - g0.value()),
                        std::abs(z1 / std::abs(z1) - g1.value())});
      auto lib = weil_index_sum(d).gamma;
      std::vector<PadicNumber> d1(d.begin(), d.begin() + 1), d2(d.begin() + 1, d.end());
      bool mult = d2.empty() || lib == weil_index_sum(d1).gamma * weil_index_sum(d2).gamma;
      std::vector<PadicNumber> dd = d;
      for (const auto& a : d) dd.push_back(-a);
      bool hyper = weil_index_sum(dd).gamma == Mu8Value(0);
      ++forms;
      if (!(g0 == g1) || !(lib == g0) || !mult || !hyper) ++bad;
    }
  }
  std::ostringstream os;
  os << forms << " forms, " << bad << " failures, max distance to mu8 " << worst;
  return {bad == 0 && worst <= 1e-6, os.str()};
}

// 5. Hilbert symbol and eta
Outcome hilbert_suite() {
  std::mt19937_64 rng(5);
  int bad = 0, triples = 0, grid = 0;
  for (int64_t p : {3, 5}) {
    auto f = FieldConfig::make(p, 10);
    for (int i = 0; i < 100; ++i) {
      auto a = rnd(rng, f, -3, 3), b = rnd(rng, f, -3, 3), c = rnd(rng, f, -3, 3);
      ++triples;
      if (hilbert_symbol(a * b, c) != hilbert_symbol(a, c) * hilbert_symbol(b, c)) ++bad;
      if (hilbert_symbol(a, b) != hilbert_symbol(b, a)) ++bad;
    }
    for (auto cls : {DeltaClass::Unramified, DeltaClass::Ramified, DeltaClass::RamifiedU0}) {
      auto g = FieldConfig::make(p, 10, cls);
      auto e = g.extension();
      for (int sc = 0; sc < 4; ++sc)
        for (int v = -2; v <= 2; ++v) {
          auto a = g.square_class_rep(sc).shifted(2 * v);
          ++grid;
          if (eta(a, e) != oracle::norm_membership(a, e.delta_sq)) ++bad;
        }
    }
  }
  std::ostringstream os;
  os << triples << " triples, " << grid << " grid points, " << bad << " failures";
  return {bad == 0, os.str()};
}

// 6. fundamental lemma at n = 1
Outcome fundamental_lemma() {
  int rows = 0, bad = 0;
  for (int64_t p : {3, 5}) {
    auto cfg = FieldConfig::make(p, 12);
    std::vector<int64_t> units{1, cfg.u0(), p + 1, 2 * p - 1};
    for (const auto& r : fund_lemma_grid(cfg, -2, 6, units)) {
      ++rows;
      const int j = r.a[0].valuation();
      const Rational want = (j >= 0 && j % 2 == 0) ? 1 : 0;
      bool ok = r.status == CheckStatus::Pass && r.lhs.value == ExactScalar::rational(p, want);
      if (r.in_norm) ok = ok && r.rhs && r.rhs->value == ExactScalar::rational(p, j >= 0 ? 1 : 0);
      if (!ok) ++bad;
    }
  }
  std::ostringstream os;
  os << rows << " invariants, " << bad << " failures";
  return {bad == 0, os.str()};
}

// 7. limit formula, 20 configurations per prime on s and s'
Outcome limit_formula() {
  std::mt19937_64 rng(7);
  int configs = 0, bad = 0, vanishing = 0, max_n = 0;
  for (int64_t p : {3, 5}) {
    const int prec = p == 3 ? 34 : 24;
    auto cfg = FieldConfig::make(p, prec);
    const auto ext = cfg.extension();
    for (int i = 0; i < 12; ++i) {
      auto cfg = FieldConfig::make(p, prec, i % 2 ? DeltaClass::Ramified : DeltaClass::Unramified);
      auto x = LieSElement::n1(rnd(rng, cfg, 0, 1), rnd(rng, cfg, 0, 1));
      auto y1 = rnd(rng, cfg, 0, 1);
      auto s = rnd(rng, cfg, 0, 0);
      const bool vanish = i % 3 == 2;
      auto ratio = vanish ? cfg.num(cfg.u0()) : s * s;
      auto y = LieSElement::n1(y1, x.a1(0, 0) * x.a2(0, 0) / (y1 * ratio));
      auto r = limit_formula_check(x, y, 1 + i % (p - 1), 8, cfg);
      ++configs;
      bool ok = r.status == CheckStatus::Pass;
      if (vanish) {
        ++vanishing;
        ok = ok && !r.trail.back().conjugate && r.trail.back().lhs_exact_zero;
      }
      if (ok) max_n = std::max(max_n, r.N);
      if (!ok) ++bad;
    }
    for (int i = 0; i < 8; ++i) {
      ExtElement c(rnd(rng, cfg, 0, 1), rnd(rng, cfg, 0, 1), ext.delta_sq);
      ExtElement w(rnd(rng, cfg, 0, 0), rnd(rng, cfg, 0, 1), ext.delta_sq);
      ExtElement b = w / w.conj() * c;
      auto x = LieSPrimeElement::n1(ExtElement(b.re() * rnd(rng, cfg, 0, 0), b.im(), ext.delta_sq),
                                    cfg.gamma);
      if (i % 2 == 0) x = LieSPrimeElement::n1(b, cfg.gamma).scaled(rnd(rng, cfg, 0, 0));
      auto y = LieSPrimeElement::n1(c, cfg.gamma);
      auto r = limit_formula_check(x, y, 1 + i % (p - 1), 8, cfg);
      ++configs;
      if (r.status != CheckStatus::Pass) ++bad;
      else max_n = std::max(max_n, r.N);
    }
  }
  std::ostringstream os;
  os << configs << " configurations (" << vanishing << " vanishing), " << bad
     << " failures, largest N = " << max_n;
  return {bad == 0, os.str()};
}

// 8. cross-side identities
Outcome cross_side() {
  std::mt19937_64 rng(8);
  int pairs = 0, pair_bad = 0, disc_bad = 0, gamma_bad = 0, gamma_eta_bad = 0;
  const DeltaClass classes[] = {DeltaClass::Unramified, DeltaClass::Ramified};
  for (int i = 0; i < 50; ++i) {
    const int64_t p = i % 2 ? 5 : 3;
    auto cfg = FieldConfig::make(p, 12, classes[(i / 2) % 2], 1 + (i / 4) % 2, 1);
    ExtElement b(rnd(rng, cfg, -1, 1), rnd(rng, cfg, -1, 1), cfg.extension().delta_sq);
    if (b.norm().is_zero()) continue;
    auto rep = cross_side_check(b, rnd(rng, cfg, -1, 1), cfg);
    ++pairs;
    pair_bad += !rep.pairing_equal || !rep.conjugator_ok;
    disc_bad += !rep.disc_equal;
    gamma_bad += !rep.gamma_identity;
    gamma_eta_bad += !rep.gamma_identity_eta;
  }
  std::ostringstream os;
  os << pairs << " pairs: pairing " << pair_bad << " failures, |D| " << disc_bad
     << " failures, gamma identity " << gamma_bad << " failures"
     << " (with the factor eta(alpha(X) alpha(U)): " << gamma_eta_bad << " failures)";
  return {pairs == 50 && pair_bad == 0 && disc_bad == 0 && gamma_bad == 0, os.str()};
}

// 9. kappa equivariance and orbit invariance of kappa * O, n <= 2
Outcome orbit_invariance() {
  std::mt19937_64 rng(9);
  int cases = 0, bad = 0, nonzero = 0, twisted = 0;
  for (int i = 0; i < 400; ++i) {
    auto cfg = FieldConfig::make(i % 2 ? 5 : 3, 14, i % 4 < 2 ? DeltaClass::Unramified : DeltaClass::Ramified);
    auto ext = cfg.extension();
    auto sp = LatticeSpace::make(Side::S, 1, cfg);
    auto x = LieSElement::n1(rnd(rng, cfg, -1, 2), rnd(rng, cfg, -1, 2));
    CosetFunction f(sp);
    f.add({ExactScalar::rational(cfg.p, 1), i % 3 ? random_vec(rng, cfg, 2, -1, 1) : sp.zero_vec(),
           random_vec(rng, cfg, 2, -1, 1), std::vector<int>(2, i % 3)});
    HElement h{MatF::diag({rnd(rng, cfg, -2, 2)}), MatF::diag({rnd(rng, cfg, -2, 2)})};
    auto hx = act(h, x);
    ++cases;
    bool ok = kappa(hx, ext) == eta_h(h, ext) * kappa(x, ext);
    ExactScalar a = orbital_n1(x, f).value, b = orbital_n1(hx, f).value;
    if (kappa(x, ext) == -1) a = -a;
    if (kappa(hx, ext) == -1) b = -b;
    nonzero += !a.is_zero();
    twisted += eta_h(h, ext) == -1;
    if (!ok || !(a == b)) ++bad;
  }
  auto cfg = FieldConfig::make(3, 20);
  auto ext = cfg.extension();
  for (int i = 0; i < 100; ++i) {
    auto d = MatF::diag({rnd(rng, cfg, 0, 2), rnd(rng, cfg, 0, 2)});
    if ((d(0, 0) - d(1, 1)).is_zero()) {
      --i;
      continue;
    }
    LieSElement x0{MatF::identity(2, cfg.num(1)), d};
    auto x = act(HElement{random_gl(rng, cfg, 2), random_gl(rng, cfg, 2)}, x0);
    HElement h{random_gl(rng, cfg, 2).scaled(rnd(rng, cfg, -1, 1)), random_gl(rng, cfg, 2)};
    auto hx = act(h, x);
    ++cases;
    bool ok = kappa(hx, ext) == eta_h(h, ext) * kappa(x, ext);
    auto a = truncated_orbital(x, 8).value, b = truncated_orbital(hx, 8).value;
    ExactScalar ka = kappa(x, ext) == 1 ? a.value : -a.value;
    ExactScalar kb = kappa(hx, ext) == 1 ? b.value : -b.value;
    nonzero += !ka.is_zero();
    twisted += eta_h(h, ext) == -1;
    if (!ok || !a.complete || !b.complete || !(ka == kb)) ++bad;
  }
  std::ostringstream os;
  os << cases << " (X, h) pairs (" << nonzero << " nonzero orbital values, " << twisted
     << " with eta(h) = -1), " << bad << " failures";
  return {bad == 0 && cases == 500, os.str()};
}

// 10. Fourier involution and self-duality
Outcome fourier_suite() {
  std::mt19937_64 rng(10);
  int functions = 0, bad = 0;
  for (int i = 0; i < 200; ++i) {
    const int64_t p = i % 2 ? 5 : 3;
    const Side side = (i / 2) % 2 ? Side::SPrime : Side::S;
    auto cfg = FieldConfig::make(p, 12, (i / 4) % 2 ? DeltaClass::Ramified : DeltaClass::Unramified,
                                 1 + (i / 8) % 2, 1);
    auto sp = LatticeSpace::make(side, 1 + (i / 16) % 2, cfg);
    CosetFunction f(sp);
    const int terms = 1 + i % 3;
    for (int t = 0; t < terms; ++t) {
      std::vector<int> scale;
      for (int j = 0; j < sp.dim(); ++j) scale.push_back(static_cast<int>(rng() % 4) - 1);
      f.add({ExactScalar::rational(p, Rational(1 + t, 1 + i % 5)), random_vec(rng, cfg, sp.dim(), -1, 2),
             random_vec(rng, cfg, sp.dim(), -2, 2), scale});
    }
    auto ff = f.fourier().fourier();
    ++functions;
    bool ok = true;
    for (int k = 0; k < 6 && ok; ++k) {
      Vec x = k < 3 ? f.terms()[static_cast<size_t>(k) % f.terms().size()].center
                    : random_vec(rng, cfg, sp.dim(), -2, 2);
      Vec mx;
      for (const auto& c : x) mx.push_back(-c);
      ok = ff(mx) == f(x);
    }
    if (!ok) ++bad;
  }
  int lattices = 0, dual_bad = 0;
  for (int64_t p : {3, 5, 7})
    for (int n : {1, 2})
      for (Side side : {Side::S, Side::SPrime}) {
        auto sp = LatticeSpace::make(side, n, FieldConfig::make(p, 10));
        auto f0 = CosetFunction::standard(sp);
        auto g = f0.fourier();
        ++lattices;
        bool ok = sp.self_dual() && g.terms().size() == 1 &&
                  g.terms()[0].scale == std::vector<int>(sp.dim(), 0) &&
                  g.terms()[0].coeff == ExactScalar::rational(p, 1);
        std::mt19937_64 pts(static_cast<uint64_t>(p * 10 + n));
        for (int k = 0; k < 8 && ok; ++k) {
          Vec x = random_vec(pts, sp.cfg, sp.dim(), -1, 1);
          ok = g(x) == f0(x);
        }
        if (!ok) ++dual_bad;
      }
  std::ostringstream os;
  os << functions << " functions, " << bad << " involution failures; " << lattices
     << " standard lattices, " << dual_bad << " not self-dual";
  return {bad == 0 && dual_bad == 0, os.str()};
}

}  // namespace

int main(int argc, char** argv) {
  bool report_only = false;
  std::vector<int> only;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--report-only") == 0) report_only = true;
    else only.push_back(std::atoi(argv[i]));
  }
  struct Criterion {
    const char* name;
    double budget;
    std::function<Outcome()> run;
  };
  const Criterion criteria[] = {
      {"nilpotent table vs matrix oracle, n <= 5", 60, nilpotent_table},
      {"nilpotent inequalities, n <= 8", 120, nilpotent_inequalities},
      {"s'-side nilpotent identities, n <= 3", 0, dprime_identities},
      {"Weil index suite", 60, weil_suite},
      {"Hilbert symbol and eta suite", 0, hilbert_suite},
      {"fundamental lemma at n = 1", 10, fundamental_lemma},
      {"limit formula at n = 1", 120, limit_formula},
      {"cross-side identities at n = 1", 0, cross_side},
      {"transfer factor equivariance and orbit invariance", 0, orbit_invariance},
      {"Fourier involution and self-duality", 0, fourier_suite},
  };
  int passed = 0, index = 0, ran = 0;
  for (const auto& c : criteria) {
    ++index;
    if (!only.empty() && std::find(only.begin(), only.end(), index) == only.end()) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    bool ok = o.pass;
    std::string budget;
    if (c.budget > 0 && secs > c.budget) {
      ok = false;
      budget = " over the time budget";
    }
    passed += ok;
    ++ran;
    std::printf("criterion %2d %s  %s: %s (%.1f s%s)\n", index, ok ? "PASS" : "FAIL", c.name,
                o.detail.c_str(), secs, budget.c_str());
    std::fflush(stdout);
  }
  std::printf("acceptance: %d of %d criteria pass\n", passed, ran);
  return (report_only || passed == ran) ? 0 : 1;
}
