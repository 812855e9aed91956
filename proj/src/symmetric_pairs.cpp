#include "stransfer/symmetric_pairs.hpp"

#include <cmath>

namespace stransfer {

LieSElement LieSElement::n1(const PadicNumber& x, const PadicNumber& y) {
  return {MatF::diag({x}), MatF::diag({y})};
}

MatF LieSElement::to_block() const {
  const int k = n();
  MatF m(2 * k, 2 * k, a1.zero());
  m.set_block(0, k, a1);
  m.set_block(k, 0, a2);
  return m;
}

LieSPrimeElement LieSPrimeElement::n1(const ExtElement& b, const PadicNumber& gamma) {
  return {MatE::diag({b}), gamma};
}

MatE LieSPrimeElement::to_block() const {
  const int k = n();
  MatE m(2 * k, 2 * k, b.zero());
  ExtElement g(gamma, RingTraits<PadicNumber>::zero_like(gamma), b.proto().delta_sq());
  m.set_block(0, k, b.scaled(g));
  m.set_block(k, 0, conj(b));
  return m;
}

LieSPrimeElement LieSPrimeElement::scaled(const PadicNumber& s) const {
  ExtElement e(s, RingTraits<PadicNumber>::zero_like(s), b.proto().delta_sq());
  return {b.scaled(e), gamma};
}

HElement HElement::identity(int n, const FieldConfig& cfg) {
  return {MatF::identity(n, cfg.num(1)), MatF::identity(n, cfg.num(1))};
}

MatF HElement::to_block() const {
  const int k = h1.rows();
  MatF m(2 * k, 2 * k, h1.zero());
  m.set_block(0, 0, h1);
  m.set_block(k, k, h2);
  return m;
}

LieSElement act(const HElement& h, const LieSElement& x) {
  MatF i1 = h.h1.inverse(), i2 = h.h2.inverse();
  return {h.h1 * x.a1 * i2, h.h2 * x.a2 * i1};
}

LieSPrimeElement act_twisted(const HPrimeElement& h, const LieSPrimeElement& y) {
  return {h.h * y.b * conj(h.h).inverse(), y.gamma};
}

PadicNumber pairing(const LieSElement& x, const LieSElement& y) {
  return (x.a1 * y.a2).trace() + (x.a2 * y.a1).trace();
}

PadicNumber pairing(const LieSPrimeElement& x, const LieSPrimeElement& y) {
  // tr([[g B Cbar, 0], [0, g Bbar C]]) = g Tr_{E/F} tr(B Cbar)
  ExtElement t = (x.b * conj(y.b)).trace();
  return x.gamma * t.trace();
}

PadicNumber trace_pairing(const MatF& x, const MatF& y) { return (x * y).trace(); }

MatF epsilon(int n, const FieldConfig& cfg) {
  MatF e = MatF::identity(2 * n, cfg.num(1));
  for (int i = n; i < 2 * n; ++i) e(i, i) = cfg.num(-1);
  return e;
}

MatF theta(const MatF& x) {
  const int N = x.rows();
  MatF r = x;
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j)
      if ((i < N / 2) != (j < N / 2)) r(i, j) = -x(i, j);
  return r;
}

MatF symmetrize(const MatF& g) {
  MatF eps = MatF::identity(g.rows(), g.proto());
  for (int i = g.rows() / 2; i < g.rows(); ++i) eps(i, i) = -eps(i, i);
  return g * eps * g.inverse() * eps;
}

MatF cayley(const MatF& x) {
  MatF one = MatF::identity(x.rows(), x.proto());
  MatF plus = one + x;
  if (plus.det().is_zero() || (one - x).det().is_zero())
    throw DomainError("cayley: 1 +- X is not invertible");
  return (one - x) * plus.inverse();
}

double AbsValue::to_double() const {
  return std::pow(static_cast<double>(p), -twice_exponent / 2.0);
}

std::string AbsValue::to_string() const {
  if (twice_exponent % 2 == 0) return std::to_string(p) + "^" + std::to_string(-twice_exponent / 2);
  return std::to_string(p) + "^(" + std::to_string(-twice_exponent) + "/2)";
}

namespace {

template <class T>
const PadicNumber& as_base(const T& x);
template <>
const PadicNumber& as_base(const PadicNumber& x) {
  return x;
}
template <>
const PadicNumber& as_base(const ExtElement& x) {
  if (!x.im().is_zero()) throw PrecisionError("discriminant coefficient not in F");
  return x.re();
}

template <class T>
AbsValue disc_from_block(const Matrix<T>& block, int n) {
  auto cp = ad_matrix(block).charpoly();
  const int k = 2 * n;  // dim t + dim c
  for (int j = 0; j < k; ++j)
    if (!cp[j].is_zero()) throw DomainError("disc_factor: element is not regular semisimple");
  const PadicNumber& c = as_base(cp[k]);
  if (c.is_zero()) throw DomainError("disc_factor: element is not regular semisimple");
  return {c.prime(), c.valuation()};
}

}  // namespace

AbsValue disc_factor(const LieSElement& x) { return disc_from_block(x.to_block(), x.n()); }

AbsValue disc_factor(const LieSPrimeElement& y) { return disc_from_block(y.to_block(), y.n()); }

}  // namespace stransfer
