#include "stransfer/weil.hpp"

#include <cmath>
#include <numbers>

namespace stransfer {

std::complex<double> Mu8Value::value() const {
  return std::polar(1.0, std::numbers::pi * k_ / 4.0);
}

Mu8Value Mu8Value::snap(std::complex<double> z, double tol) {
  double r = std::abs(z);
  if (!(r > 0)) throw DomainError("cannot snap zero to mu8");
  z /= r;
  int k = static_cast<int>(std::lround(std::arg(z) / (std::numbers::pi / 4.0)));
  Mu8Value m(k);
  if (std::abs(z - m.value()) > tol) throw DomainError("value is not within tolerance of mu8");
  return m;
}

bool QuadraticForm::is_diagonal() const {
  for (int i = 0; i < dim(); ++i)
    for (int j = 0; j < dim(); ++j)
      if (i != j && !gram(i, j).is_zero()) return false;
  return true;
}

std::vector<PadicNumber> QuadraticForm::diagonal_entries() const {
  std::vector<PadicNumber> d;
  for (int i = 0; i < dim(); ++i) d.push_back(gram(i, i));
  return d;
}

QuadraticForm QuadraticForm::operator+(const QuadraticForm& o) const {
  const int n = dim(), m = o.dim();
  MatF g(n + m, n + m, gram.zero());
  g.set_block(0, 0, gram);
  g.set_block(n, n, o.gram);
  return {g};
}

QuadraticForm QuadraticForm::scaled(const PadicNumber& a) const { return {gram.scaled(a)}; }

namespace {

struct Elim {
  std::vector<PadicNumber> diag;
  MatF basis;
  bool degenerate = false;
};

Elim eliminate(const QuadraticForm& q) {
  const int d = q.dim();
  MatF a = q.gram;
  MatF P = MatF::identity(d, a.proto());
  Elim out;
  auto weight = [](const PadicNumber& x) { return RingTraits<PadicNumber>::pivot_weight(x); };
  auto swap_idx = [&](int i, int j) {
    if (i == j) return;
    for (int c = 0; c < d; ++c) std::swap(a(i, c), a(j, c));
    for (int r = 0; r < d; ++r) std::swap(a(r, i), a(r, j));
    for (int r = 0; r < d; ++r) std::swap(P(r, i), P(r, j));
  };
  for (int i = 0; i < d; ++i) {
    int bi = -1, bj = -1, bw = std::numeric_limits<int>::max();
    for (int r = i; r < d; ++r)
      for (int c = r; c < d; ++c) {
        int w = weight(a(r, c));
        // Prefer diagonal pivots on ties.
        if (w < bw || (w == bw && r == c && bi != bj)) bi = r, bj = c, bw = w;
      }
    if (bw == std::numeric_limits<int>::max()) {
      out.degenerate = true;
      break;
    }
    if (bi != bj) {
      // e_bi <- e_bi + e_bj makes the diagonal entry a(bi,bi) + 2a(bi,bj) + a(bj,bj).
      for (int c = 0; c < d; ++c) a(bi, c) = a(bi, c) + a(bj, c);
      for (int r = 0; r < d; ++r) a(r, bi) = a(r, bi) + a(r, bj);
      for (int r = 0; r < d; ++r) P(r, bi) = P(r, bi) + P(r, bj);
    }
    swap_idx(i, bi);
    const PadicNumber piv = a(i, i);
    if (piv.is_zero()) throw PrecisionError("diagonalize: pivot vanished");
    for (int r = i + 1; r < d; ++r) {
      if (a(r, i).is_zero()) continue;
      PadicNumber f = a(r, i) / piv;
      for (int c = 0; c < d; ++c) a(r, c) = a(r, c) - f * a(i, c);
      for (int c = 0; c < d; ++c) a(c, r) = a(c, r) - f * a(c, i);
      for (int c = 0; c < d; ++c) P(c, r) = P(c, r) - f * P(c, i);
      a(r, i) = a.zero();
      a(i, r) = a.zero();
    }
    out.diag.push_back(piv);
  }
  out.basis = P;
  return out;
}

}  // namespace

Diagonalization diagonalize(const QuadraticForm& q) {
  Elim e = eliminate(q);
  if (e.degenerate) throw DomainError("diagonalize: degenerate form");
  return {QuadraticForm::diagonal(e.diag), e.basis};
}

std::vector<PadicNumber> diagonalize_nondegenerate_part(const QuadraticForm& q) {
  return eliminate(q).diag;
}

WeilSum weil_index_sum(const std::vector<PadicNumber>& diag, int shrink, Exec exec) {
  if (diag.empty()) return {1.0, Mu8Value(0)};
  const int64_t p = diag[0].prime();
  std::vector<GaussTerm> terms;
  double scale = 1.0;
  for (size_t i = 0; i < diag.size(); ++i) {
    const PadicNumber& a = diag[i];
    if (a.is_zero()) throw DomainError("weil index of a degenerate form");
    int v = a.valuation();
    int m = static_cast<int>(std::floor(-v / 2.0));
    if (i == 0) m -= shrink;
    int vb = v + 2 * m;
    int k = -vb;
    if (a.digits() < k) throw PrecisionError("weil index: insufficient precision");
    scale *= std::pow(static_cast<double>(p), -m + vb);
    if (k == 0) continue;
    int64_t mod = modp::pow(p, k);
    int64_t c = modp::mulmod(a.unit() % mod, modp::invmod(2, mod), mod);
    terms.push_back({c, k});
  }
  auto hist = gauss_histogram(p, terms, exec);
  const int64_t n = static_cast<int64_t>(hist.size());
  long double re = 0, im = 0;
  for (int64_t j = 0; j < n; ++j) {
    if (hist[j] == 0) continue;
    long double t = 2 * std::numbers::pi_v<long double> * j / n;
    re += hist[j] * std::cos(t);
    im += hist[j] * std::sin(t);
  }
  std::complex<double> z(static_cast<double>(re), static_cast<double>(im));
  return {z * scale, Mu8Value::snap(z)};
}

Mu8Value weil_index_oracle(const QuadraticForm& q, int shrink) {
  auto d = q.is_diagonal() ? q.diagonal_entries() : diagonalize(q).form.diagonal_entries();
  return weil_index_sum(d, shrink).gamma;
}

Mu8Value gamma_ratio(const PadicNumber& a) {
  if (a.is_zero()) throw PrecisionError("gamma_ratio of zero");
  auto one = RingTraits<PadicNumber>::one_like(a);
  return weil_index_sum({a}).gamma * weil_index_sum({one}).gamma.inverse();
}

QuadraticForm space_form(LieSpace s, int n, const FieldConfig& cfg) {
  const PadicNumber zero = cfg.zero();
  const PadicNumber one = cfg.num(1), two = cfg.num(2);
  const PadicNumber delta = cfg.extension().delta_sq;
  auto gl_block = [&](const PadicNumber& scale) {
    // tr(E_ij E_kl) = [j == k][i == l] on gl_n
    const int d = n * n;
    MatF g(d, d, zero);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) g(i * n + j, j * n + i) = scale;
    return g;
  };
  switch (s) {
    case LieSpace::H: {
      QuadraticForm a{gl_block(one)};
      return a + a;
    }
    case LieSpace::HPrime: {
      // F-basis {E_ij, delta E_ij} of gl_n(E) inside the block-diagonal (Q, Qbar).
      QuadraticForm a{gl_block(two)}, b{gl_block(two * delta)};
      return a + b;
    }
    case LieSpace::T:
    case LieSpace::TPrime:
      if (n != 1) throw DomainError("torus forms are provided for n = 1 only");
      return QuadraticForm::diagonal({two});
  }
  throw DomainError("unknown space");
}

Mu8Value gamma_of_space(const QuadraticForm& q) { return weil_index_oracle(q); }

}  // namespace stransfer
