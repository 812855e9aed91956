#pragma once

// Orbital integrals of coset functions: exact shell sums at n = 1 on both
// sides, a lattice-counting engine for f0 at n <= 2, the fundamental-lemma
// grid, Weil indices of the forms q_{X,Y}, and the Fourier-kernel limit
// formula at n = 1.

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "stransfer/coset.hpp"
#include "stransfer/kernels.hpp"
#include "stransfer/weil.hpp"

namespace stransfer {

// IntegralModel: vol(H(O)) = vol(H'(O)) = 1 and vol(O^x) = 1 on the
// stabilizer tori, so the quotient measure gives O^x (resp. O_E^x / O^x)
// volume 1.
// SelfDualExp: Haar measures transported by exp from the self-dual measures
// of the trace form on h, t (resp. h', t'). At n = 1 the quotient volume of
// O^x is 1 - 1/p, and of O_E^x / O^x is 1 + 1/p for unramified E.
enum class MeasureConvention { IntegralModel, SelfDualExp };
const char* to_string(MeasureConvention m);

struct IntegralValue {
  bool exact = true;
  ExactScalar value;    // exact part
  int quarter_exp = 0;  // the value is multiplied by p^{quarter_exp / 4}
  bool complete = true;
  double error_bound = 0;  // infinite for incomplete truncated values
  std::complex<double> to_complex() const;
  double real_factor() const;
};

// O^eta(X, f) for X = (x, y) in s at n = 1. Sum over k of eta(p)^k times the
// unit-shell integral, each evaluated exactly from a unit-sum histogram.
IntegralValue orbital_n1(const LieSElement& x, const CosetFunction& f, bool twisted = true,
                         MeasureConvention m = MeasureConvention::IntegralModel,
                         Exec exec = default_exec());

// O(Y, f') for Y = b in s' at n = 1, summed over representatives of E^1.
IntegralValue orbital_n1_prime(const LieSPrimeElement& y, const CosetFunction& f,
                               MeasureConvention m = MeasureConvention::IntegralModel,
                               Exec exec = default_exec());

// |D(X)|^{1/2} times the integral.
IntegralValue normalized(const IntegralValue& v, const AbsValue& disc);

IntegralValue fourier_orbital(const LieSElement& x, const CosetFunction& f,
                              MeasureConvention m = MeasureConvention::IntegralModel,
                              Exec exec = default_exec());
IntegralValue fourier_orbital(const LieSPrimeElement& y, const CosetFunction& f,
                              MeasureConvention m = MeasureConvention::IntegralModel,
                              Exec exec = default_exec());

// O^eta(X, f0) for n <= 2 with A2 A1 split regular semisimple and E
// unramified, by counting lattices O^2 N <= Lambda <= O^2 with
// [O^2 : Lambda] <= p^depth. Complete once depth >= v(det A1 A2).
struct TruncatedOrbital {
  IntegralValue value;
  int depth = 0;
  int needed_depth = 0;
  int64_t lattices = 0;
};
TruncatedOrbital truncated_orbital(const LieSElement& x, int depth,
                                   int64_t max_lattices = 50'000'000);

enum class CheckStatus { Pass, Fail, Inconclusive };
const char* to_string(CheckStatus s);

struct FundLemmaRow {
  int n = 1;
  std::vector<PadicNumber> a;  // eigenvalues of A (n = 2) or the invariant (n = 1)
  bool in_norm = false;
  IntegralValue lhs;                // kappa(X) O^eta(X, f0)
  std::optional<IntegralValue> rhs;  // O(Y, f0')
  CheckStatus status = CheckStatus::Inconclusive;
  std::string note;
};

// Requires gamma = 1 and E unramified.
FundLemmaRow fund_lemma_check(const PadicNumber& a, const FieldConfig& cfg,
                              Exec exec = default_exec());
// Split A = diag(a1, a2). Only the vanishing half is decidable here: when A
// is not a norm the left side must be 0; otherwise the row is inconclusive.
FundLemmaRow fund_lemma_check_split2(const PadicNumber& a1, const PadicNumber& a2,
                                     const FieldConfig& cfg, int depth);
// Invariants u * p^j for j in [j_min, j_max] and the given units.
std::vector<FundLemmaRow> fund_lemma_grid(const FieldConfig& cfg, int j_min, int j_max,
                                          const std::vector<int64_t>& units,
                                          Exec exec = default_exec());

// Weil index of q_{X,Y}(Z, Z') = <[Z, X], [Y, Z']> on h / t, built from
// explicit brackets on a basis of h; t is the radical.
Mu8Value gamma_pair(const LieSElement& x, const LieSElement& y);
Mu8Value gamma_pair(const LieSPrimeElement& x, const LieSPrimeElement& y);

// Measured kernel i^(X, Y) at n = 1 under SelfDualExp: the Fourier orbital of
// the ball Y + p^a L0, divided by vol * kappa(Y) * |D(Y)|^{-1/2}, with a
// increased until two consecutive radii agree exactly.
struct KernelValue {
  std::complex<double> value;
  IntegralValue exact;  // the same value as an exact scalar times a power of p
  int ball_scale = 0;
  bool stabilized = false;
};
KernelValue measured_kernel(const LieSElement& x, const LieSElement& y, const FieldConfig& cfg,
                            int a_floor, Exec exec = default_exec());
KernelValue measured_kernel(const LieSPrimeElement& x, const LieSPrimeElement& y,
                            const FieldConfig& cfg, int a_floor, Exec exec = default_exec());

// kappa(Y) sum over h in T \ H with h.X in c of eta(h) gamma(mu h.X, Y) psi(<mu h.X, Y>),
// and the s' analogue without eta and kappa.
struct LimitRhs {
  bool conjugate = false;  // X is conjugate into the Cartan through Y
  std::complex<double> value;
  int terms = 0;
};
LimitRhs limit_rhs(const LieSElement& x, const LieSElement& y, const PadicNumber& mu,
                   const FieldConfig& cfg);
LimitRhs limit_rhs(const LieSPrimeElement& x, const LieSPrimeElement& y, const PadicNumber& mu,
                   const FieldConfig& cfg);

struct LimitPoint {
  int v_mu = 0;
  bool conjugate = false;
  std::complex<double> lhs, rhs;
  double deviation = 0;
  int ball_scale = 0;
  bool lhs_exact_zero = false;
  bool stabilized = false;
  bool pass = false;
};

LimitPoint limit_formula_at(const LieSElement& x, const LieSElement& y, const PadicNumber& mu,
                            const FieldConfig& cfg, double tol = 1e-9,
                            Exec exec = default_exec());
LimitPoint limit_formula_at(const LieSPrimeElement& x, const LieSPrimeElement& y,
                            const PadicNumber& mu, const FieldConfig& cfg, double tol = 1e-9,
                            Exec exec = default_exec());

// mu = u * p^{-v} for v = 1, 2, 4, ... up to v_max; N is the first v from
// which every later point passes.
struct LimitSearch {
  std::vector<LimitPoint> trail;
  int N = 0;
  bool found = false;
  CheckStatus status = CheckStatus::Inconclusive;
};
LimitSearch limit_formula_check(const LieSElement& x, const LieSElement& y, int64_t mu_unit,
                                int v_max, const FieldConfig& cfg, double tol = 1e-9,
                                Exec exec = default_exec());
LimitSearch limit_formula_check(const LieSPrimeElement& x, const LieSPrimeElement& y,
                                int64_t mu_unit, int v_max, const FieldConfig& cfg,
                                double tol = 1e-9, Exec exec = default_exec());

// i^(X, mu Y) against eta(mu) i^(mu X, Y).
struct ScalingCheck {
  std::complex<double> direct, predicted;
  double deviation = 0;
  bool pass = false;
};
ScalingCheck limit_scaling_check(const LieSElement& x, const LieSElement& y,
                                 const PadicNumber& mu, const FieldConfig& cfg,
                                 double tol = 1e-9, Exec exec = default_exec());

// n = 1: Y = b in s', X = [[0, 1], [gamma b bbar, 0]], conjugator
// x = diag(1, gamma b), V = r Y and U = Ad(x) V computed as 2x2 matrices over E.
struct CrossSideReport {
  LieSElement x, u;
  LieSPrimeElement y, v;
  bool conjugator_ok = false;  // Ad(x) Y = X
  bool pairing_equal = false;
  bool disc_equal = false;
  Mu8Value gamma_xu, gamma_yv, space_ratio;  // space_ratio = gamma(h) gamma(h')^{-1}
  int eta_alpha = 1;                          // eta(alpha(X) alpha(U))
  bool gamma_identity = false;                // as stated, without eta_alpha
  bool gamma_identity_eta = false;            // with the eta_alpha factor
};
CrossSideReport cross_side_check(const ExtElement& b, const PadicNumber& r,
                                 const FieldConfig& cfg);

// Square root in F of a square, or nothing.
std::optional<PadicNumber> padic_sqrt(const PadicNumber& c);

}  // namespace stransfer
