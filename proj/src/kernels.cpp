#include "stransfer/kernels.hpp"

#include <omp.h>

#include <algorithm>
#include <atomic>

#include "stransfer/padic.hpp"

namespace stransfer {

namespace {

std::atomic<Exec> g_exec{Exec::Parallel};

template <class Body>
std::vector<int64_t> histogram_loop(int64_t count, size_t buckets, Exec exec, Body body) {
  std::vector<int64_t> hist(buckets, 0);
  if (exec == Exec::Serial) {
    for (int64_t i = 0; i < count; ++i) body(i, hist);
    return hist;
  }
#pragma omp parallel
  {
    std::vector<int64_t> local(buckets, 0);
#pragma omp for schedule(static)
    for (int64_t i = 0; i < count; ++i) body(i, local);
#pragma omp critical
    for (size_t j = 0; j < buckets; ++j) hist[j] += local[j];
  }
  return hist;
}

}  // namespace

Exec default_exec() { return g_exec.load(); }
void set_default_exec(Exec e) { g_exec.store(e); }

std::vector<int64_t> gauss_histogram(int64_t p, const std::vector<GaussTerm>& terms,
                                     Exec exec) {
  int K = 0;
  int64_t count = 1;
  for (const auto& t : terms) {
    K = std::max(K, t.level);
    count *= modp::pow(p, t.level);
  }
  const int64_t mod = modp::pow(p, K);
  std::vector<int64_t> radix, coeff;
  for (const auto& t : terms) {
    radix.push_back(modp::pow(p, t.level));
    coeff.push_back(modp::mulmod(t.coeff, modp::pow(p, K - t.level), mod));
  }
  return histogram_loop(count, static_cast<size_t>(mod), exec,
                        [&](int64_t idx, std::vector<int64_t>& h) {
                          int64_t e = 0;
                          for (size_t i = 0; i < radix.size(); ++i) {
                            int64_t y = idx % radix[i];
                            idx /= radix[i];
                            e += modp::mulmod(coeff[i], modp::mulmod(y, y, mod), mod);
                          }
                          h[static_cast<size_t>(e % mod)] += 1;
                        });
}

std::vector<int64_t> unit_sum_histogram(int64_t p, const UnitSum& s, Exec exec) {
  if (s.d < std::max({1, s.e, s.ka, s.kb})) throw DomainError("unit sum depth too small");
  const int K = std::max(s.ka, s.kb);
  const int64_t mod = modp::pow(p, K);
  const int64_t md = modp::pow(p, s.d);
  const int64_t step = modp::pow(p, s.e);
  const int64_t count = modp::pow(p, s.d - s.e);
  const int64_t mb = modp::pow(p, s.kb);
  const int64_t a = modp::mulmod(s.alpha, modp::pow(p, K - s.ka), mod);
  const int64_t b = modp::mulmod(s.beta, modp::pow(p, K - s.kb), mod);
  const int64_t r = ((s.r % step) + step) % step;
  return histogram_loop(count, static_cast<size_t>(mod), exec,
                        [&](int64_t t, std::vector<int64_t>& h) {
                          int64_t u = (r + t * step) % md;
                          if (u % p == 0) return;
                          int64_t j = modp::mulmod(a, u, mod);
                          if (b != 0) {
                            int64_t ui = modp::invmod(u % mb, mb);
                            j = (j + modp::mulmod(b, ui, mod)) % mod;
                          }
                          int sign = s.legendre_sign ? modp::legendre(u % p, p) : 1;
                          h[static_cast<size_t>(j)] += sign;
                        });
}

}  // namespace stransfer
