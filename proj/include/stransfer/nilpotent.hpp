#pragma once

// Signed partitions of nilpotent H-orbits in s, the (r, m) table, and exact
// linear-algebra oracles for both symmetric pairs.

#include <cstdint>
#include <string>
#include <vector>

#include "stransfer/kernels.hpp"

namespace stransfer {

struct SignedBlock {
  int w = 1;      // dimension of the indecomposable F[Y]-module
  int delta = 1;  // +1 when the generator lies in V0, -1 when in V1
  int half() const { return w / 2; }
  bool odd() const { return w % 2 == 1; }
};

struct SignedPartition {
  std::vector<SignedBlock> blocks;

  // Throws DomainError unless every w >= 1, delta = +-1 and odd blocks are
  // balanced between the two signs.
  static SignedPartition make(std::vector<SignedBlock> blocks);
  // "3+ 1-" style; the inverse of to_string.
  static SignedPartition parse(const std::string& s);

  bool balanced() const;
  int n() const;  // u + sum p_i
  int u() const;  // odd blocks with delta = +1
  bool is_zero() const;  // all blocks of size 1
  bool is_single_block() const { return blocks.size() == 1; }
  SignedPartition flipped() const;
  std::string to_string() const;
};

// m can be a half-integer, so it is stored doubled throughout.
struct PairTerm {
  int i = 0, j = 0;  // i == j for diagonal terms
  int64_t r = 0, twice_m = 0;
};

struct NilpotentInvariants {
  int64_t r = 0;
  int64_t twice_m = 0;
  std::vector<PairTerm> terms;
  std::string m_string() const;
  bool same_totals(const NilpotentInvariants& o) const { return r == o.r && twice_m == o.twice_m; }
};

// Printed: the table exactly as stated. GradingExact: the row with w_i even,
// w_j odd, w_i > w_j replaced by m_ij = 2p_ip_j + (p_i - p_j) - 1/2 for both
// signs, which is the value of 1/2 Tr(ad(-d)) on that pair.
enum class TableReading { Printed, GradingExact };

// Integer partitions of k, descending lexicographic, parts descending.
std::vector<std::vector<int>> integer_partitions(int k);

// Balanced signed partitions of 2n: partitions of 2n descending, then sign
// patterns. Blocks of equal size are unordered, so within such a group the
// +1 signs come first and only their count varies (from all + to all -).
std::vector<SignedPartition> signed_partitions(int n);

int64_t pair_r(const SignedBlock& a, const SignedBlock& b);
int64_t pair_twice_m(const SignedBlock& a, const SignedBlock& b,
                     TableReading reading = TableReading::Printed);

NilpotentInvariants table_invariants(const SignedPartition& sp,
                                     TableReading reading = TableReading::Printed);

// Realizes Y0 over Q as a sum of cyclic blocks alternating between V0 and V1
// and the grading d with weights w-1, w-3, ..., 1-w on each block. Returns
// r = dim ker(ad Y0) on s and m = 1/2 sum of (-d)-weights on that kernel,
// split into the same diagonal and pair terms as the table. The centralizer
// in h is computed too so the sl2 identity
//   Tr(ad(-d) | g_{Y0}) = dim g - dim g_{Y0}
// can be checked.
struct OracleResult {
  NilpotentInvariants s;
  int64_t r_h = 0;
  int64_t twice_m_h = 0;  // Tr(ad(-d) | h_{Y0})
  bool sl2_identity() const;
  int n = 0;
};
OracleResult matrix_oracle_full(const SignedPartition& sp);
NilpotentInvariants matrix_oracle(const SignedPartition& sp);

struct InequalityReport {
  bool skipped = false;  // zero nilpotent
  int n = 0;
  int64_t r = 0, twice_m = 0;
  // 2(r + m) - (2n^2 + n); the strict inequality holds iff this is > 0.
  int64_t twice_slack = 0;
  bool r_ge_n = false;
  bool strict = false;
  bool r_eq_n = false;
  bool single_block = false;
  bool ok() const { return skipped || (r_ge_n && strict && (r_eq_n == single_block)); }
};

InequalityReport verify_inequalities(const SignedPartition& sp, const NilpotentInvariants& inv);
InequalityReport verify_inequalities(const SignedPartition& sp,
                                     TableReading reading = TableReading::GradingExact);

struct NilpScanRow {
  SignedPartition sp;
  NilpotentInvariants printed;
  NilpotentInvariants exact;
  bool has_oracle = false;
  OracleResult oracle;
  InequalityReport ineq;  // from the oracle when present, else GradingExact
  bool printed_matches() const { return !has_oracle || printed.same_totals(oracle.s); }
  bool exact_matches() const { return !has_oracle || exact.same_totals(oracle.s); }
};

// Every balanced signed partition of 2n for n in [n_min, n_max]. The oracle is
// evaluated when n <= oracle_max.
std::vector<NilpScanRow> nilpotent_scan(int n_min, int n_max, int oracle_max, Exec exec);

// s'-side: Y0 = [[0, gamma A], [Abar, 0]] with A in Jordan form of the given
// type (a partition of n, zero blocks allowed). Half-integers are kept doubled.
struct DPrimeData {
  std::vector<int> jordan;
  int n = 0;
  int64_t r = 0;        // dim s'_{Y0}
  int64_t r_h = 0;      // dim h'_{Y0}
  int64_t twice_m = 0;  // Tr(ad(-d) | s'_{Y0})
  int64_t twice_mh = 0; // Tr(ad(-d) | h'_{Y0})
};

DPrimeData dprime_oracle(const std::vector<int>& jordan);

struct DPrimeReport {
  bool m_formula = false;     // 4m = 4n^2 - 2r
  bool sum_identity = false;  // r + m = n^2 + r/2
  bool r_ge_2n = false;
  bool mprime_lt = false;     // m' < n^2
  bool strict = false;        // r + m > n^2 + n/2
  bool trace_split = false;   // m + m' = (4n^2 - r - r')/2
  bool ok() const { return m_formula && sum_identity && r_ge_2n && mprime_lt && strict && trace_split; }
};

DPrimeReport dprime_invariants(const DPrimeData& d);

}  // namespace stransfer
