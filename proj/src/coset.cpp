#include "stransfer/coset.hpp"

#include <cmath>
#include <sstream>

namespace stransfer {

namespace {

const Cyclotomic& gauss_sqrt_p(int64_t p) {
  // sum (k/p) zeta_p^k = sqrt(p) for p = 1 mod 4
  thread_local int64_t cached_p = 0;
  thread_local Cyclotomic cached;
  if (cached_p != p) {
    std::vector<int64_t> counts(static_cast<size_t>(p), 0);
    for (int64_t k = 1; k < p; ++k) counts[static_cast<size_t>(k)] = modp::legendre(k, p);
    cached = Cyclotomic::from_counts(p, 1, std::move(counts), Rational(1));
    cached_p = p;
  }
  return cached;
}

}  // namespace

ExactScalar::ExactScalar(const Cyclotomic& a) : a_(a), b_(a.prime()), p_(a.prime()) {}

ExactScalar::ExactScalar(const Cyclotomic& a, const Cyclotomic& b)
    : a_(a), b_(b), p_(a.prime()) {
  fold();
}

ExactScalar ExactScalar::rational(int64_t p, const Rational& q) {
  return ExactScalar(Cyclotomic(p, q));
}

ExactScalar ExactScalar::sqrt_p_power(int64_t p, int h) {
  if (h % 2 == 0) return rational(p, rational_ppow(p, h / 2));
  int e = (h - 1) / 2;
  return ExactScalar(Cyclotomic(p), Cyclotomic(p, rational_ppow(p, e)));
}

void ExactScalar::fold() {
  if (p_ % 4 == 1 && !b_.is_zero()) {
    a_ = a_ + b_ * gauss_sqrt_p(p_);
    b_ = Cyclotomic(p_);
  }
}

ExactScalar ExactScalar::operator+(const ExactScalar& o) const {
  ExactScalar r(*this);
  r.a_ = a_ + o.a_;
  r.b_ = b_ + o.b_;
  if (is_zero()) r.p_ = o.p_;
  return r;
}

ExactScalar ExactScalar::operator-() const {
  ExactScalar r(*this);
  r.a_ = -a_;
  r.b_ = -b_;
  return r;
}

ExactScalar ExactScalar::operator-(const ExactScalar& o) const { return *this + (-o); }

ExactScalar ExactScalar::operator*(const ExactScalar& o) const {
  ExactScalar r(p_);
  r.a_ = a_ * o.a_ + b_ * o.b_ * Rational(p_);
  r.b_ = a_ * o.b_ + b_ * o.a_;
  r.fold();
  return r;
}

std::complex<double> ExactScalar::to_complex() const {
  return a_.to_complex() + std::sqrt(static_cast<double>(p_)) * b_.to_complex();
}

std::string ExactScalar::to_string() const {
  std::ostringstream os;
  auto render = [&](const Cyclotomic& c) {
    auto ts = c.terms();
    if (ts.empty()) {
      os << "0";
      return;
    }
    for (size_t i = 0; i < ts.size(); ++i) {
      if (i) os << " + ";
      os << rational_to_string(ts[i].coeff);
      if (ts[i].level > 0) os << "*z" << ts[i].level << "^" << ts[i].num;
    }
  };
  render(a_);
  if (!b_.is_zero()) {
    os << " + sqrt(" << p_ << ")*(";
    render(b_);
    os << ")";
  }
  return os.str();
}

LatticeSpace LatticeSpace::make(Side side, int n, const FieldConfig& cfg) {
  if (n < 1) throw DomainError("lattice space: n must be positive");
  LatticeSpace s;
  s.side = side;
  s.n = n;
  s.cfg = cfg;
  const int nn = n * n;
  s.partner.resize(2 * nn);
  if (side == Side::S) {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        s.partner[i * n + j] = nn + j * n + i;
        s.partner[nn + i * n + j] = j * n + i;
      }
    s.g.assign(2 * nn, cfg.num(1));
  } else {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        s.partner[i * n + j] = j * n + i;
        s.partner[nn + i * n + j] = nn + j * n + i;
      }
    PadicNumber ga = cfg.num(2) * cfg.gamma;
    PadicNumber gb = -(ga * cfg.extension().delta_sq);
    s.g.assign(nn, ga);
    s.g.insert(s.g.end(), nn, gb);
  }
  for (const auto& x : s.g) s.gval.push_back(x.valuation());
  return s;
}

PadicNumber LatticeSpace::pair(const Vec& x, const Vec& y) const {
  PadicNumber acc = cfg.zero();
  for (int i = 0; i < dim(); ++i) {
    if (x[i].is_exact_zero() || y[partner[i]].is_exact_zero()) continue;
    acc += g[i] * x[i] * y[partner[i]];
  }
  return acc;
}

bool LatticeSpace::self_dual() const {
  for (int v : gval)
    if (v != 0) return false;
  return true;
}

std::vector<int> LatticeSpace::dual_scales(const std::vector<int>& a) const {
  std::vector<int> b(a.size());
  for (int j = 0; j < dim(); ++j) b[j] = -a[partner[j]] - gval[j];
  return b;
}

ExactScalar LatticeSpace::volume(const std::vector<int>& a) const {
  int h = 0;
  for (int j = 0; j < dim(); ++j) h += -2 * a[j] - gval[j];
  return ExactScalar::sqrt_p_power(cfg.p, h);
}

Vec LatticeSpace::zero_vec() const { return Vec(static_cast<size_t>(dim()), cfg.zero()); }

Vec coords(const LieSElement& x) {
  const int n = x.n();
  Vec v;
  v.reserve(2 * n * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) v.push_back(x.a1(i, j));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) v.push_back(x.a2(i, j));
  return v;
}

Vec coords(const LieSPrimeElement& y) {
  const int n = y.n();
  Vec v;
  v.reserve(2 * n * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) v.push_back(y.b(i, j).re());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) v.push_back(y.b(i, j).im());
  return v;
}

LieSElement s_element(const Vec& v, int n) {
  if (static_cast<int>(v.size()) != 2 * n * n) throw DomainError("s_element: wrong length");
  LieSElement x{MatF(n, n, v[0]), MatF(n, n, v[0])};
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      x.a1(i, j) = v[i * n + j];
      x.a2(i, j) = v[n * n + i * n + j];
    }
  return x;
}

LieSPrimeElement s_prime_element(const Vec& v, int n, const FieldConfig& cfg) {
  if (static_cast<int>(v.size()) != 2 * n * n) throw DomainError("s_prime_element: wrong length");
  const PadicNumber d = cfg.extension().delta_sq;
  MatE b(n, n, ExtElement(cfg.zero(), cfg.zero(), d));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) b(i, j) = ExtElement(v[i * n + j], v[n * n + i * n + j], d);
  return {b, cfg.gamma};
}

bool in_coset(const Vec& x, const Vec& center, const std::vector<int>& scale) {
  for (size_t i = 0; i < x.size(); ++i) {
    PadicNumber d = x[i] - center[i];
    if (d.is_zero()) {
      if (d.absolute_precision() < scale[i])
        throw PrecisionError("coset membership undecided at working precision");
      continue;
    }
    if (d.valuation() < scale[i]) return false;
  }
  return true;
}

bool term_value(const LatticeSpace& s, const CosetTerm& t, const Vec& x, CharacterValue* out) {
  if (!in_coset(x, t.center, t.scale)) return false;
  *out = psi(s.pair(t.chi, x));
  return true;
}

CosetFunction CosetFunction::ball(const LatticeSpace& space, const Vec& center, int a) {
  if (static_cast<int>(center.size()) != space.dim()) throw DomainError("ball: wrong center length");
  CosetFunction f(space);
  f.terms_.push_back({ExactScalar::rational(space.prime(), 1), space.zero_vec(), center,
                      std::vector<int>(static_cast<size_t>(space.dim()), a)});
  return f;
}

void CosetFunction::add(CosetTerm t) {
  if (static_cast<int>(t.chi.size()) != space_.dim() ||
      static_cast<int>(t.center.size()) != space_.dim() ||
      static_cast<int>(t.scale.size()) != space_.dim())
    throw DomainError("coset term: wrong length");
  terms_.push_back(std::move(t));
}

CosetFunction CosetFunction::operator+(const CosetFunction& o) const {
  CosetFunction r = *this;
  for (const auto& t : o.terms_) r.terms_.push_back(t);
  return r;
}

CosetFunction CosetFunction::scaled(const ExactScalar& s) const {
  CosetFunction r = *this;
  for (auto& t : r.terms_) t.coeff = s * t.coeff;
  return r;
}

CosetFunction CosetFunction::fourier() const {
  CosetFunction r(space_);
  for (const auto& t : terms_) {
    CosetTerm u;
    ExactScalar phase(Cyclotomic::character(psi(space_.pair(t.center, t.chi))));
    u.coeff = t.coeff * space_.volume(t.scale) * phase;
    u.chi = t.center;
    u.center.reserve(t.chi.size());
    for (const auto& w : t.chi) u.center.push_back(-w);
    u.scale = space_.dual_scales(t.scale);
    r.terms_.push_back(std::move(u));
  }
  return r;
}

ExactScalar CosetFunction::operator()(const Vec& x) const {
  ExactScalar acc(space_.prime());
  CharacterValue cv;
  for (const auto& t : terms_)
    if (term_value(space_, t, x, &cv)) acc += t.coeff * ExactScalar(Cyclotomic::character(cv));
  return acc;
}

}  // namespace stransfer
