#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "oracles_weil.hpp"
#include "stransfer/weil.hpp"
#include "test_util.hpp"

using namespace stransfer;

namespace {

std::vector<PadicNumber> random_diag(std::mt19937_64& rng, const FieldConfig& f, int dim) {
  std::vector<PadicNumber> d;
  for (int i = 0; i < dim; ++i) d.push_back(testutil::random_nonzero(rng, f, -2, 3));
  return d;
}

std::vector<int> admissible(const std::vector<PadicNumber>& d) {
  std::vector<int> m;
  for (const auto& a : d) m.push_back(static_cast<int>(std::floor(-a.valuation() / 2.0)));
  return m;
}

}  // namespace

TEST_CASE("hyperbolic plane and small cases") {
  auto f = FieldConfig::make(5, 8);
  CHECK(weil_index_oracle(QuadraticForm::diagonal({f.num(1), f.num(-1)})) == Mu8Value(0));
  CHECK(weil_index_oracle(QuadraticForm::diagonal({f.num(3)})) == Mu8Value(0));
  auto g5 = weil_index_oracle(QuadraticForm::diagonal({f.num(5)}));
  auto direct = oracle::gauss_integral({f.num(5)}, {-1}, 3);
  CHECK(g5 == Mu8Value::snap(direct));
}

TEST_CASE("library sum agrees with uniform-depth direct sum") {
  std::mt19937_64 rng(5);
  for (int64_t p : {3, 5, 7}) {
    auto f = FieldConfig::make(p, 8);
    for (int i = 0; i < 25; ++i) {
      int dim = 1 + i % 3;
      auto d = random_diag(rng, f, dim);
      auto m = admissible(d);
      for (int shrink : {0, 1}) {
        auto mm = m;
        mm[0] -= shrink;
        int K = 0;
        for (int j = 0; j < dim; ++j) K = std::max(K, -(d[j].valuation() + 2 * mm[j]));
        auto cost = [&](int k) { return std::pow(double(p), double(k * dim)); };
        if (cost(K + 1) <= 2e6) K += 1;
        if (cost(K) > 2e7) continue;
        auto direct = oracle::gauss_integral(d, mm, K);
        auto lib = weil_index_sum(d, shrink);
        CHECK(std::abs(direct - lib.integral) < 1e-9 * std::max(1.0, std::abs(direct)));
        CHECK(lib.gamma == Mu8Value::snap(direct));
      }
    }
  }
}

TEST_CASE("quadratic Gauss sums") {
  // For b = u/p the integral is p^{-1} sum_y e(u y^2 / 2p), a classical Gauss sum.
  for (int64_t p : {3, 5, 7, 11}) {
    auto f = FieldConfig::make(p, 6);
    for (int64_t u = 1; u < p; ++u) {
      auto g = weil_index_oracle(QuadraticForm::diagonal({f.rat(u, p)}));
      int chi = modp::legendre(modp::mulmod(u, (p + 1) / 2, p), p);
      Mu8Value expect = (p % 4 == 1) ? Mu8Value(0) : Mu8Value(2);
      if (chi == -1) expect = expect * Mu8Value(4);
      CHECK(g == expect);
    }
  }
}

TEST_CASE("lattice independence, multiplicativity, q + (-q)") {
  std::mt19937_64 rng(9);
  for (int64_t p : {3, 5, 7}) {
    auto f = FieldConfig::make(p, 8);
    for (int i = 0; i < 40; ++i) {
      auto d1 = random_diag(rng, f, 1 + i % 2);
      auto d2 = random_diag(rng, f, 1);
      auto q1 = QuadraticForm::diagonal(d1), q2 = QuadraticForm::diagonal(d2);
      CHECK(weil_index_oracle(q1, 0) == weil_index_oracle(q1, 1));
      CHECK(weil_index_oracle(q1 + q2) == weil_index_oracle(q1) * weil_index_oracle(q2));
      CHECK(weil_index_oracle(q1 + q1.scaled(f.num(-1))) == Mu8Value(0));
      CHECK(weil_index_oracle(q1) * weil_index_oracle(q1.scaled(f.num(-1))) == Mu8Value(0));
    }
  }
}

TEST_CASE("diagonalize") {
  auto f = FieldConfig::make(5, 8);
  MatF h(2, 2, f.zero());
  h(0, 1) = f.num(1);
  h(1, 0) = f.num(1);
  auto dz = diagonalize({h});
  auto e = dz.form.diagonal_entries();
  CHECK((e[0] * e[1] * f.num(-1)).is_square());
  CHECK(weil_index_oracle({h}) == Mu8Value(0));
  CHECK(diagonalize({MatF::identity(3, f.num(1))}).form.diagonal_entries()[2] == f.num(1));

  std::mt19937_64 rng(21);
  for (int64_t p : {3, 5, 7}) {
    auto g = FieldConfig::make(p, 10);
    for (int t = 0; t < 30; ++t) {
      MatF q(3, 3, g.zero());
      for (int i = 0; i < 3; ++i)
        for (int j = i; j < 3; ++j) {
          auto x = testutil::random_nonzero(rng, g, 0, 2);
          q(i, j) = x;
          q(j, i) = x;
        }
      if (q.det().is_zero()) continue;
      auto dd = diagonalize({q});
      CHECK(dd.basis.transpose() * q * dd.basis == dd.form.gram);
      CHECK((dd.form.gram.det() / q.det()).is_square());
    }
  }
  MatF z(2, 2, f.zero());
  CHECK_THROWS_AS(diagonalize({z}), DomainError);
}

TEST_CASE("gamma ratio depends on square class only") {
  std::mt19937_64 rng(31);
  for (int64_t p : {3, 5, 7}) {
    auto f = FieldConfig::make(p, 8);
    CHECK(gamma_ratio(f.num(1)) == Mu8Value(0));
    for (int c = 0; c < 4; ++c) {
      auto rep = f.square_class_rep(c);
      auto g = gamma_ratio(rep);
      for (int i = 0; i < 5; ++i) {
        auto s = testutil::random_nonzero(rng, f, -2, 2);
        CHECK(gamma_ratio(rep * s * s) == g);
      }
    }
  }
}

TEST_CASE("spaces") {
  for (int64_t p : {3, 5, 7})
    for (auto cls : {DeltaClass::Unramified, DeltaClass::Ramified, DeltaClass::RamifiedU0}) {
      auto f = FieldConfig::make(p, 8, cls);
      auto h = space_form(LieSpace::H, 1, f);
      CHECK(gamma_of_space(h) == Mu8Value(0));
      CHECK(gamma_of_space(h) * gamma_of_space(h).inverse() == Mu8Value(0));
      auto hp = space_form(LieSpace::HPrime, 1, f);
      auto direct = oracle::gauss_integral({f.num(2), f.num(2) * f.extension().delta_sq},
                                           {0, f.extension().ramified() ? -1 : 0}, 2);
      CHECK(gamma_of_space(hp) == Mu8Value::snap(direct));
      CHECK(gamma_of_space(space_form(LieSpace::H, 2, f)) == Mu8Value(0));
    }
}

TEST_CASE("serial and parallel kernels agree") {
  std::vector<GaussTerm> t{{2, 2}, {4, 1}, {1, 3}};
  CHECK(gauss_histogram(5, t, Exec::Serial) == gauss_histogram(5, t, Exec::Parallel));
}
