// Local factors and Euler products for the double Dirichlet series
//
//   F(s, w) = sum_n n^{-s} sum_{d | n^4, n^4/d square} d^{-w} r4*(d)
//           = zeta(s) zeta(s+2w-2) zeta(s+4w-4) G(s, w),   G = prod_p G_p.
//
// Local series are written in X = p^{-s} (first variable) and Y = p^{-w}
// (second variable).
#pragma once

#include <span>
#include <vector>

#include "qpc/arith.hpp"
#include "qpc/local_series.hpp"

namespace qpc {

inline constexpr int kMaxLocalDegree = 200;

// sum_{nu <= deg} X^nu sum_{mu <= 2 nu} Y^{2 mu} r4*(p^{2 mu}), straight
// from the definition of the p-part.
LocalSeries local_factor_definition(u64 p, int deg);

// prod_{j=0..2} (1 - p^{2j} X Y^{2j})^{-1} * G_p(X, Y), expanded to X^deg.
LocalSeries local_factor_closed_form(u64 p, int deg);

struct IdentityReport {
  bool series_equal = false;      // truncated expansions of both sides agree
  bool polynomial_equal = false;  // denominator-cleared polynomials agree exactly
  std::size_t terms_compared = 0;

  explicit operator bool() const { return series_equal && polynomial_equal; }
};

// sum_nu x^nu sum_{mu <= 2nu} y^{2mu} (1 - z^{2mu+1})/(1 - z)
//   = (1 + x y^2 (1+z+z^2) + x y^4 (z+z^2+z^3) + x^2 y^6 z^3)
//     / ((1-x)(1-x y^4)(1-x y^4 z^4))
IdentityReport formal_identity_1(int total_degree = 40);

// 1 + sum_{nu >= 1} x^nu (1 + a sum_{1 <= mu <= 2nu} y^{2mu})
//   = (1 + a x y^2 + (a-1) x y^4) / ((1-x)(1-x y^4)),  variables (x, y, a)
IdentityReport formal_identity_2(int total_degree = 40);

// The two sides of each identity as series, exposed for specialization tests.
LocalSeries formal_identity_1_lhs(Truncation t);
LocalSeries formal_identity_1_rhs(Truncation t);
LocalSeries formal_identity_2_lhs(Truncation t);
LocalSeries formal_identity_2_rhs(Truncation t);

struct ZetaValue {
  double s = 0;
  double value = 0;
  double error_bound = 0;
};

inline constexpr double kZetaTolerance = 1e-12;

// Euler-Maclaurin evaluation for real s > 1.  Throws std::domain_error for
// s < 1 + 1e-6.  Near the pole the error bound may exceed kZetaTolerance;
// it is reported rather than refused.
ZetaValue zeta(double s);

// (u - 1) zeta(u), analytic through u = 1 where it equals 1.  Valid for u > 0.
long double zeta_times_sm1(long double u);

// zeta(u) in extended precision without the domain check (u > 0, u != 1).
long double zeta_ld(long double u);

struct EulerValue {
  double value = 0;
  double tail_bound = 0;
};

inline constexpr double kConvergenceMargin = 1e-3;

// min_{j=0,1,2} (s + 2jw - 2j)
double min_exponent(double s, double w);

// The local correction factor G_p(s, w) (p = 2 uses its own form).
long double g_local(u64 p, long double s, long double w);

// prod_{p <= prime_limit} G_p(s, w) with a bound on |G(s, w) - value|.
// Requires min_exponent(s, w) >= 1/2 + kConvergenceMargin; throws
// std::domain_error otherwise.
EulerValue g_value(double s, double w, u64 prime_limit);
EulerValue g_value(double s, double w, std::span<const u64> primes, u64 prime_limit);

// |sum_{n <= N} n^{-s} sum_{q | n^2} q^{-2w} r4*(q^2)
//   - zeta(s) zeta(s+2w-2) zeta(s+4w-4) G(s, w)|
// Requires s > 5 and w > 0.  N must not exceed the sieve limit.
double global_series_check(const SpfSieve& sieve, double s, double w, u64 N, u64 prime_limit);

// Primes up to limit via a fresh sieve (empty for limit < 2).
std::vector<u64> primes_up_to(u64 limit);

}  // namespace qpc
