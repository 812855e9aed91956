#include "stransfer/nilpotent.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>
#include <tuple>

#include <boost/multiprecision/cpp_int.hpp>

#include "stransfer/padic.hpp"

namespace stransfer {

namespace {

using Q = boost::multiprecision::cpp_rational;

// Rank of the given column vectors over Q.
int rank_q(std::vector<std::vector<Q>> cols) {
  if (cols.empty()) return 0;
  const size_t rows = cols[0].size();
  int rank = 0;
  for (size_t r = 0; r < rows && static_cast<size_t>(rank) < cols.size(); ++r) {
    size_t piv = cols.size();
    for (size_t c = rank; c < cols.size(); ++c)
      if (cols[c][r] != 0) {
        piv = c;
        break;
      }
    if (piv == cols.size()) continue;
    std::swap(cols[rank], cols[piv]);
    for (size_t c = rank + 1; c < cols.size(); ++c) {
      if (cols[c][r] == 0) continue;
      Q f = cols[c][r] / cols[rank][r];
      for (size_t k = r; k < rows; ++k) cols[c][k] -= f * cols[rank][k];
    }
    ++rank;
  }
  return rank;
}

// Unknowns grouped by weight; each contributes one column of the constraint
// map. Returns (dim of kernel, sum of (-weight) * dim over the kernel).
struct Unknown {
  int weight;
  std::vector<Q> image;
};

std::pair<int64_t, int64_t> graded_kernel(const std::vector<Unknown>& unknowns) {
  std::map<int, std::vector<std::vector<Q>>> by_weight;
  for (const auto& u : unknowns) by_weight[u.weight].push_back(u.image);
  int64_t dim = 0, trace = 0;
  for (auto& [w, cols] : by_weight) {
    int64_t k = static_cast<int64_t>(cols.size()) - rank_q(cols);
    dim += k;
    trace += -static_cast<int64_t>(w) * k;
  }
  return {dim, trace};
}

int64_t min64(int64_t a, int64_t b) { return std::min(a, b); }

}  // namespace

SignedPartition SignedPartition::make(std::vector<SignedBlock> blocks) {
  SignedPartition sp{std::move(blocks)};
  if (sp.blocks.empty()) throw DomainError("signed partition: no blocks");
  for (const auto& b : sp.blocks) {
    if (b.w < 1) throw DomainError("signed partition: block size must be >= 1");
    if (b.delta != 1 && b.delta != -1) throw DomainError("signed partition: sign must be +1 or -1");
  }
  if (!sp.balanced()) throw DomainError("signed partition: odd blocks are not balanced");
  return sp;
}

SignedPartition SignedPartition::parse(const std::string& s) {
  std::istringstream in(s);
  std::string tok;
  std::vector<SignedBlock> blocks;
  while (in >> tok) {
    if (tok.size() < 2 || (tok.back() != '+' && tok.back() != '-'))
      throw DomainError("signed partition: bad token '" + tok + "'");
    SignedBlock b;
    try {
      b.w = std::stoi(tok.substr(0, tok.size() - 1));
    } catch (const std::exception&) {
      throw DomainError("signed partition: bad token '" + tok + "'");
    }
    b.delta = tok.back() == '+' ? 1 : -1;
    blocks.push_back(b);
  }
  return make(std::move(blocks));
}

bool SignedPartition::balanced() const {
  int bal = 0;
  for (const auto& b : blocks)
    if (b.odd()) bal += b.delta;
  return bal == 0;
}

int SignedPartition::u() const {
  int c = 0;
  for (const auto& b : blocks)
    if (b.odd() && b.delta == 1) ++c;
  return c;
}

int SignedPartition::n() const {
  int s = u();
  for (const auto& b : blocks) s += b.half();
  return s;
}

bool SignedPartition::is_zero() const {
  return std::all_of(blocks.begin(), blocks.end(), [](const SignedBlock& b) { return b.w == 1; });
}

SignedPartition SignedPartition::flipped() const {
  SignedPartition r = *this;
  for (auto& b : r.blocks) b.delta = -b.delta;
  return r;
}

std::string SignedPartition::to_string() const {
  std::string s;
  for (const auto& b : blocks) {
    if (!s.empty()) s += ' ';
    s += std::to_string(b.w) + (b.delta == 1 ? "+" : "-");
  }
  return s;
}

std::vector<std::vector<int>> integer_partitions(int k) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  std::function<void(int, int)> rec = [&](int rest, int maxpart) {
    if (rest == 0) {
      out.push_back(cur);
      return;
    }
    for (int part = std::min(rest, maxpart); part >= 1; --part) {
      cur.push_back(part);
      rec(rest - part, part);
      cur.pop_back();
    }
  };
  rec(k, k);
  return out;
}

std::vector<SignedPartition> signed_partitions(int n) {
  if (n < 1) throw DomainError("signed_partitions: n must be >= 1");
  std::vector<SignedPartition> out;
  for (const auto& parts : integer_partitions(2 * n)) {
    // groups of equal parts: (size, multiplicity)
    std::vector<std::pair<int, int>> groups;
    for (int w : parts) {
      if (!groups.empty() && groups.back().first == w)
        ++groups.back().second;
      else
        groups.push_back({w, 1});
    }
    std::vector<int> plus(groups.size());
    std::function<void(size_t)> rec = [&](size_t g) {
      if (g == groups.size()) {
        SignedPartition sp;
        for (size_t i = 0; i < groups.size(); ++i)
          for (int c = 0; c < groups[i].second; ++c)
            sp.blocks.push_back({groups[i].first, c < plus[i] ? 1 : -1});
        if (sp.balanced()) out.push_back(std::move(sp));
        return;
      }
      for (int k = groups[g].second; k >= 0; --k) {
        plus[g] = k;
        rec(g + 1);
      }
    };
    rec(0);
  }
  return out;
}

int64_t pair_r(const SignedBlock& a, const SignedBlock& b) {
  const int64_t pa = a.half(), pb = b.half();
  const int dd = a.delta * b.delta;
  if (!a.odd() && !b.odd()) return 2 * min64(pa, pb);
  if (a.odd() && b.odd()) return dd == 1 ? 2 * min64(pa, pb) : 2 * min64(pa, pb) + 2;
  const SignedBlock& e = a.odd() ? b : a;
  const SignedBlock& o = a.odd() ? a : b;
  if (e.w < o.w) return 2 * e.half();
  return 2 * o.half() + 1;
}

int64_t pair_twice_m(const SignedBlock& a, const SignedBlock& b, TableReading reading) {
  const int64_t pa = a.half(), pb = b.half();
  const int dd = a.delta * b.delta;
  if (!a.odd() && !b.odd()) return 2 * (dd == 1 ? 2 * pa * pb : 2 * pa * pb - 2 * min64(pa, pb));
  if (a.odd() && b.odd()) return 2 * (dd == 1 ? 2 * pa * pb : 2 * pa * pb + 2 * std::max(pa, pb));
  const SignedBlock& e = a.odd() ? b : a;
  const SignedBlock& o = a.odd() ? a : b;
  const int64_t pe = e.half(), po = o.half();
  if (e.w < o.w) return 4 * pe * po;
  if (reading == TableReading::GradingExact) return 4 * pe * po + 2 * (pe - po) - 1;
  return 2 * (dd == 1 ? 2 * pe * po + 2 * (pe - po) - 1 : 2 * pe * po);
}

std::string NilpotentInvariants::m_string() const {
  if (twice_m % 2 == 0) return std::to_string(twice_m / 2);
  return std::to_string(twice_m) + "/2";
}

NilpotentInvariants table_invariants(const SignedPartition& sp, TableReading reading) {
  if (!sp.balanced()) throw DomainError("table_invariants: unbalanced signed partition");
  NilpotentInvariants inv;
  const int k = static_cast<int>(sp.blocks.size());
  for (int i = 0; i < k; ++i) {
    const int64_t p = sp.blocks[i].half();
    inv.terms.push_back({i, i, p, 2 * p * p});
  }
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j)
      inv.terms.push_back({i, j, pair_r(sp.blocks[i], sp.blocks[j]),
                           pair_twice_m(sp.blocks[i], sp.blocks[j], reading)});
  for (const auto& t : inv.terms) {
    inv.r += t.r;
    inv.twice_m += t.twice_m;
  }
  return inv;
}

bool OracleResult::sl2_identity() const {
  const int64_t dim_g = 4 * static_cast<int64_t>(n) * n;
  const int64_t dim_c = s.r + r_h;
  return s.twice_m + twice_m_h == dim_g - dim_c;
}

OracleResult matrix_oracle_full(const SignedPartition& sp) {
  if (!sp.balanced()) throw DomainError("matrix_oracle: unbalanced signed partition");
  // Basis e_0..e_{N-1}; parity = 0 for V0, 1 for V1.
  std::vector<int> parity, weight, next, block;
  for (size_t bi = 0; bi < sp.blocks.size(); ++bi) {
    const auto& b = sp.blocks[bi];
    const int deg = b.delta == 1 ? 0 : 1;
    const int base = static_cast<int>(parity.size());
    for (int k = 0; k < b.w; ++k) {
      parity.push_back((deg + k) % 2);
      weight.push_back(b.w - 1 - 2 * k);
      next.push_back(k + 1 < b.w ? base + k + 1 : -1);
      block.push_back(static_cast<int>(bi));
    }
  }
  const int N = static_cast<int>(parity.size());
  if (std::count(parity.begin(), parity.end(), 0) * 2 != N)
    throw DomainError("matrix_oracle: grading is inconsistent");
  // Check [d, Y] = -2Y on the basis.
  for (int c = 0; c < N; ++c)
    if (next[c] >= 0 && weight[next[c]] != weight[c] - 2)
      throw DomainError("matrix_oracle: grading is inconsistent");
  std::vector<int> prev(N, -1);
  for (int c = 0; c < N; ++c)
    if (next[c] >= 0) prev[next[c]] = c;
  // [E_ab, Y] = E_ab Y - Y E_ab with Y e_c = e_next(c):
  //   E_ab Y = E_{a, prev(b)},  Y E_ab = E_{next(a), b}.
  // Y is block diagonal, so the system splits by unordered block pair; the
  // pieces are solved separately to report per-pair terms.
  const int k = static_cast<int>(sp.blocks.size());
  std::map<std::pair<int, int>, std::vector<Unknown>> s_part;
  std::vector<Unknown> h_part;
  for (int a = 0; a < N; ++a)
    for (int b = 0; b < N; ++b) {
      Unknown u{weight[a] - weight[b], std::vector<Q>(static_cast<size_t>(N) * N)};
      if (prev[b] >= 0) u.image[a * N + prev[b]] += 1;
      if (next[a] >= 0) u.image[next[a] * N + b] -= 1;
      if (parity[a] == parity[b]) {
        h_part.push_back(std::move(u));
      } else {
        auto key = std::minmax(block[a], block[b]);
        s_part[{key.first, key.second}].push_back(std::move(u));
      }
    }
  OracleResult res;
  res.n = N / 2;
  for (int i = 0; i < k; ++i)
    for (int j = i; j < k; ++j) {
      auto it = s_part.find({i, j});
      PairTerm t{i, j, 0, 0};
      if (it != s_part.end()) std::tie(t.r, t.twice_m) = graded_kernel(it->second);
      res.s.r += t.r;
      res.s.twice_m += t.twice_m;
      res.s.terms.push_back(t);
    }
  std::tie(res.r_h, res.twice_m_h) = graded_kernel(h_part);
  std::sort(res.s.terms.begin(), res.s.terms.end(), [](const PairTerm& x, const PairTerm& y) {
    return std::pair(x.i != x.j, std::pair(x.i, x.j)) < std::pair(y.i != y.j, std::pair(y.i, y.j));
  });
  return res;
}

NilpotentInvariants matrix_oracle(const SignedPartition& sp) { return matrix_oracle_full(sp).s; }

InequalityReport verify_inequalities(const SignedPartition& sp, const NilpotentInvariants& inv) {
  InequalityReport rep;
  rep.n = sp.n();
  rep.single_block = sp.is_single_block();
  if (sp.is_zero()) {
    rep.skipped = true;
    return rep;
  }
  const int64_t n = rep.n;
  rep.r = inv.r;
  rep.twice_m = inv.twice_m;
  rep.twice_slack = 2 * inv.r + inv.twice_m - (2 * n * n + n);
  rep.r_ge_n = inv.r >= n;
  rep.strict = rep.twice_slack > 0;
  rep.r_eq_n = inv.r == n;
  return rep;
}

InequalityReport verify_inequalities(const SignedPartition& sp, TableReading reading) {
  return verify_inequalities(sp, table_invariants(sp, reading));
}

std::vector<NilpScanRow> nilpotent_scan(int n_min, int n_max, int oracle_max, Exec exec) {
  std::vector<NilpScanRow> rows;
  for (int n = n_min; n <= n_max; ++n)
    for (auto& sp : signed_partitions(n)) {
      NilpScanRow row;
      row.sp = std::move(sp);
      rows.push_back(std::move(row));
    }
  auto work = [&](size_t i) {
    auto& row = rows[i];
    row.printed = table_invariants(row.sp, TableReading::Printed);
    row.exact = table_invariants(row.sp, TableReading::GradingExact);
    if (row.sp.n() <= oracle_max) {
      row.oracle = matrix_oracle_full(row.sp);
      row.has_oracle = true;
      row.ineq = verify_inequalities(row.sp, row.oracle.s);
    } else {
      row.ineq = verify_inequalities(row.sp, row.exact);
    }
  };
  const long count = static_cast<long>(rows.size());
  if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < count; ++i) work(static_cast<size_t>(i));
  } else {
    for (long i = 0; i < count; ++i) work(static_cast<size_t>(i));
  }
  return rows;
}

DPrimeData dprime_oracle(const std::vector<int>& jordan) {
  DPrimeData d;
  d.jordan = jordan;
  std::vector<int> weight, next;
  for (int w : jordan) {
    if (w < 1) throw DomainError("dprime_oracle: Jordan block size must be >= 1");
    const int base = static_cast<int>(weight.size());
    for (int k = 0; k < w; ++k) {
      weight.push_back(w - 1 - 2 * k);
      next.push_back(k + 1 < w ? base + k + 1 : -1);
    }
  }
  const int n = static_cast<int>(weight.size());
  if (n == 0) throw DomainError("dprime_oracle: empty Jordan type");
  d.n = n;
  std::vector<int> prev(n, -1);
  for (int c = 0; c < n; ++c)
    if (next[c] >= 0) prev[next[c]] = c;
  // Entries of n x n matrices over E = F + F sqrt(Delta) as 2 n^2 coordinates
  // (re, im). A is rational, so Abar = A.
  auto idx = [n](int a, int b, int part) { return (a * n + b) * 2 + part; };
  // s': Z = [[0, g Q], [Qbar, 0]], [Z, Y0] = 0  <=>  A Qbar = Q A.
  // h': Z = diag(P, Pbar),       [Z, Y0] = 0  <=>  P A = A Pbar.
  // Both are the same shape of equation; they are built separately from the
  // block products to keep the oracle literal.
  std::vector<Unknown> s_unknowns, h_unknowns;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int part = 0; part < 2; ++part) {
        const int sign = part == 0 ? 1 : -1;  // conjugation on the coordinate
        // s': A Qbar - Q A with Q = E_ab * (1 or sqrt Delta)
        Unknown us{weight[a] - weight[b], std::vector<Q>(2 * static_cast<size_t>(n) * n)};
        if (next[a] >= 0) us.image[idx(next[a], b, part)] += sign;  // A E_ab = E_{next a, b}
        if (prev[b] >= 0) us.image[idx(a, prev[b], part)] -= 1;     // E_ab A = E_{a, prev b}
        s_unknowns.push_back(std::move(us));
        // h': P A - A Pbar
        Unknown uh{weight[a] - weight[b], std::vector<Q>(2 * static_cast<size_t>(n) * n)};
        if (prev[b] >= 0) uh.image[idx(a, prev[b], part)] += 1;
        if (next[a] >= 0) uh.image[idx(next[a], b, part)] -= sign;
        h_unknowns.push_back(std::move(uh));
      }
  auto [rs, ts] = graded_kernel(s_unknowns);
  auto [rh, th] = graded_kernel(h_unknowns);
  d.r = rs;
  d.twice_m = ts;
  d.r_h = rh;
  d.twice_mh = th;
  return d;
}

DPrimeReport dprime_invariants(const DPrimeData& d) {
  DPrimeReport rep;
  const int64_t n = d.n;
  // m = (4n^2 - 2r)/4  <=>  2 (2m) = 4n^2 - 2r
  rep.m_formula = 2 * d.twice_m == 4 * n * n - 2 * d.r;
  // r + m = n^2 + r/2  <=>  2r + 2m = 2n^2 + r
  rep.sum_identity = 2 * d.r + d.twice_m == 2 * n * n + d.r;
  rep.r_ge_2n = d.r >= 2 * n;
  rep.mprime_lt = d.twice_mh < 2 * n * n;
  rep.strict = 2 * d.r + d.twice_m > 2 * n * n + n;
  rep.trace_split = d.twice_m + d.twice_mh == 4 * n * n - d.r - d.r_h;
  return rep;
}

}  // namespace stransfer
