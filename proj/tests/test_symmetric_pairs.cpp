#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "stransfer/symmetric_pairs.hpp"
#include "test_util.hpp"

using namespace stransfer;

namespace {

MatF random_mat(std::mt19937_64& rng, const FieldConfig& f, int n, int vmin = 0, int vmax = 2) {
  MatF m(n, n, f.zero());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = testutil::random_nonzero(rng, f, vmin, vmax);
  return m;
}

MatF random_gl(std::mt19937_64& rng, const FieldConfig& f, int n) {
  for (;;) {
    MatF m = random_mat(rng, f, n, -1, 2);
    if (!m.det().is_zero()) return m;
  }
}

MatE random_mate(std::mt19937_64& rng, const FieldConfig& f, int n) {
  auto e = f.extension();
  MatE m(n, n, ExtElement::embed(f.zero(), e));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      m(i, j) = ExtElement::make(testutil::random_nonzero(rng, f, 0, 2),
                                 testutil::random_nonzero(rng, f, 0, 2), e);
  return m;
}

}  // namespace

TEST_CASE("matrix basics") {
  auto f = FieldConfig::make(5, 10);
  std::mt19937_64 rng(1);
  for (int n = 1; n <= 4; ++n) {
    for (int t = 0; t < 10; ++t) {
      auto a = random_gl(rng, f, n), b = random_gl(rng, f, n);
      CHECK((a * b).det() == a.det() * b.det());
      CHECK(a * a.inverse() == MatF::identity(n, f.num(1)));
      auto cp = a.charpoly();
      CHECK(cp.size() == static_cast<size_t>(n + 1));
      CHECK(cp[n] == f.num(1));
      // Cayley-Hamilton
      MatF acc(n, n, f.zero()), pw = MatF::identity(n, f.num(1));
      for (int k = 0; k <= n; ++k) {
        acc = acc + pw.scaled(cp[k]);
        pw = pw * a;
      }
      CHECK(acc.is_zero());
    }
  }
}

TEST_CASE("action axioms on s") {
  std::mt19937_64 rng(2);
  for (int64_t p : {3, 5}) {
    auto f = FieldConfig::make(p, 10);
    for (int t = 0; t < 500; ++t) {
      int n = 1 + t % 3;
      LieSElement x{random_mat(rng, f, n), random_mat(rng, f, n)};
      HElement h{random_gl(rng, f, n), random_gl(rng, f, n)};
      HElement g{random_gl(rng, f, n), random_gl(rng, f, n)};
      CHECK(act(h * g, x) == act(h, act(g, x)));
      if (t % 10 == 0) CHECK(act(HElement::identity(n, f), x) == x);
      // block form: Ad(h) on the 2n x 2n matrix
      if (t % 25 == 0) {
        MatF hb = h.to_block();
        CHECK(act(h, x).to_block() == hb * x.to_block() * hb.inverse());
      }
    }
  }
}

TEST_CASE("n=1 action formulas") {
  auto f = FieldConfig::make(5, 8);
  auto x = LieSElement::n1(f.num(3), f.num(10));
  auto s = f.num(7), t = f.rat(2, 5);
  auto r = act({MatF::diag({f.num(1)}), MatF::diag({s})}, x);
  CHECK(r.a1(0, 0) == f.num(3) / s);
  CHECK(r.a2(0, 0) == f.num(10) * s);
  CHECK(act({MatF::diag({t}), MatF::diag({t})}, x) == x);
}

TEST_CASE("twisted action on s'") {
  std::mt19937_64 rng(3);
  for (auto cls : {DeltaClass::Unramified, DeltaClass::Ramified}) {
    auto f = FieldConfig::make(5, 10, cls, 3);
    auto e = f.extension();
    for (int t = 0; t < 100; ++t) {
      int n = 1 + t % 2;
      LieSPrimeElement y{random_mate(rng, f, n), f.gamma};
      MatE hm = random_mate(rng, f, n);
      if (hm.det().norm().is_zero()) continue;
      HPrimeElement h{hm}, g{random_mate(rng, f, n)};
      if (g.h.det().norm().is_zero()) continue;
      CHECK(act_twisted(h * g, y) == act_twisted(h, act_twisted(g, y)));
      auto inv = [&](const LieSPrimeElement& z) {
        return (z.b * conj(z.b)).scaled(ExtElement::embed(z.gamma, e)).charpoly();
      };
      auto c0 = inv(y), c1 = inv(act_twisted(h, y));
      for (size_t k = 0; k < c0.size(); ++k) CHECK(c0[k] == c1[k]);
      // pairing lands in F and is invariant
      LieSPrimeElement z{random_mate(rng, f, n), f.gamma};
      auto py = pairing(y, z);
      CHECK(py == pairing(act_twisted(h, y), act_twisted(h, z)));
      auto full = (y.to_block() * z.to_block()).trace();
      CHECK(full.im().is_zero());
      CHECK(full.re() == py);
    }
    auto b = ExtElement::make(f.num(2), f.num(1), e);
    auto hh = ExtElement::make(f.num(1), f.num(3), e);
    auto r = act_twisted({MatE::diag({hh})}, LieSPrimeElement::n1(b, f.gamma));
    CHECK(r.b(0, 0) == hh / hh.conj() * b);
  }
}

TEST_CASE("pairing on s") {
  std::mt19937_64 rng(4);
  auto f = FieldConfig::make(3, 10);
  auto one = LieSElement::n1(f.num(1), f.num(1));
  CHECK(pairing(one, one) == f.num(2));
  for (int t = 0; t < 100; ++t) {
    int n = 1 + t % 3;
    LieSElement x{random_mat(rng, f, n), random_mat(rng, f, n)};
    LieSElement y{random_mat(rng, f, n), random_mat(rng, f, n)};
    HElement h{random_gl(rng, f, n), random_gl(rng, f, n)};
    CHECK(pairing(x, y) == pairing(y, x));
    CHECK(pairing(act(h, x), act(h, y)) == pairing(x, y));
    CHECK(pairing(x, y) == trace_pairing(x.to_block(), y.to_block()));
    // non-degeneracy: some basis vector pairs nontrivially
    bool found = false;
    for (int i = 0; i < n && !found; ++i)
      for (int j = 0; j < n && !found; ++j)
        for (int side = 0; side < 2 && !found; ++side) {
          LieSElement e{MatF(n, n, f.zero()), MatF(n, n, f.zero())};
          (side ? e.a2 : e.a1)(i, j) = f.num(1);
          found = !pairing(x, e).is_zero();
        }
    CHECK(found);
  }
}

TEST_CASE("theta, h and s orthogonality") {
  auto f = FieldConfig::make(5, 8);
  std::mt19937_64 rng(5);
  for (int n = 1; n <= 3; ++n) {
    const int N = 2 * n;
    MatF g = random_mat(rng, f, N);
    CHECK(theta(theta(g)) == g);
    CHECK(theta(g) == epsilon(n, f) * g * epsilon(n, f));
    for (int a = 0; a < N * N; ++a)
      for (int b = 0; b < N * N; ++b) {
        int i = a / N, j = a % N, k = b / N, l = b % N;
        bool a_in_h = (i < n) == (j < n), b_in_h = (k < n) == (l < n);
        if (a_in_h == b_in_h) continue;
        MatF ea(N, N, f.zero()), eb(N, N, f.zero());
        ea(i, j) = f.num(1);
        eb(k, l) = f.num(1);
        CHECK(trace_pairing(ea, eb).is_zero());
      }
  }
}

TEST_CASE("symmetrization and cayley") {
  auto f = FieldConfig::make(5, 10);
  std::mt19937_64 rng(6);
  for (int n = 1; n <= 2; ++n) {
    const int N = 2 * n;
    MatF id = MatF::identity(N, f.num(1));
    CHECK(symmetrize(id) == id);
    CHECK(cayley(MatF(N, N, f.zero())) == id);
    for (int t = 0; t < 20; ++t) {
      MatF g = random_gl(rng, f, N);
      HElement h{random_gl(rng, f, n), random_gl(rng, f, n)};
      MatF s = symmetrize(g);
      CHECK(symmetrize(g * h.to_block()) == s);
      // iota(x) = eps x^-1 eps
      CHECK(epsilon(n, f) * s.inverse() * epsilon(n, f) == s);
      LieSElement x{random_mat(rng, f, n, 1, 3), random_mat(rng, f, n, 1, 3)};
      MatF xb = x.to_block();
      MatF l = cayley(xb), lm = cayley(-xb);
      CHECK(l * lm == id);
      CHECK(theta(l) == lm);
      CHECK(theta(l) == l.inverse());
    }
  }
}

TEST_CASE("discriminant factor") {
  std::mt19937_64 rng(7);
  for (int64_t p : {3, 5}) {
    auto f = FieldConfig::make(p, 12);
    for (int t = 0; t < 30; ++t) {
      auto x = testutil::random_nonzero(rng, f, -2, 3), y = testutil::random_nonzero(rng, f, -2, 3);
      auto d = disc_factor(LieSElement::n1(x, y));
      CHECK(d.twice_exponent == (x * y).valuation());
      HElement h{MatF::diag({testutil::random_nonzero(rng, f)}),
                 MatF::diag({testutil::random_nonzero(rng, f)})};
      CHECK(disc_factor(act(h, LieSElement::n1(x, y))) == d);
    }
    auto x2 = LieSElement{MatF::identity(2, f.num(1)), MatF::diag({f.num(1), f.num(2)})};
    auto d2 = disc_factor(x2);
    HElement h{random_gl(rng, f, 2), random_gl(rng, f, 2)};
    CHECK(disc_factor(act(h, x2)) == d2);
    CHECK_THROWS_AS(disc_factor(LieSElement::n1(f.num(1), f.zero())), DomainError);
  }
}
