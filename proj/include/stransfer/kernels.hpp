#pragma once

// Data-parallel enumeration kernels. Each has a serial reference and an
// OpenMP variant; both return identical integer histograms.

#include <cstdint>
#include <vector>

namespace stransfer {

enum class Exec { Serial, Parallel };

// Process-wide default used by the higher-level modules.
Exec default_exec();
void set_default_exec(Exec e);

struct GaussTerm {
  int64_t coeff;  // c modulo p^level
  int level;      // the coordinate runs over Z/p^level
};

// hist[j] = #{ y in prod Z/p^{k_i} : sum c_i y_i^2 p^{K-k_i} = j mod p^K },
// K = max k_i.
std::vector<int64_t> gauss_histogram(int64_t p, const std::vector<GaussTerm>& terms,
                                     Exec exec);

// Twisted Kloosterman-type sum over units u mod p^d with u = r mod p^e:
//   hist[j] += sign(u)  where  j = alpha*u*p^{K-ka} + beta*u^{-1}*p^{K-kb} mod p^K,
// K = max(ka, kb), and sign(u) is the Legendre symbol of u when legendre_sign
// is set and 1 otherwise. Requires d >= max(1, e, ka, kb).
struct UnitSum {
  int d = 1;
  int e = 0;
  int64_t r = 0;
  int64_t alpha = 0;
  int ka = 0;
  int64_t beta = 0;
  int kb = 0;
  bool legendre_sign = false;
};

std::vector<int64_t> unit_sum_histogram(int64_t p, const UnitSum& s, Exec exec);

}  // namespace stransfer
