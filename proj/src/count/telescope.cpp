// Geometric-shell sandwich for T(B).
//
// With delta = 1 - 1/log B the range n <= B is cut into shells
// delta^k B < n <= delta^{k-1} B, k = 1..k0, plus the remainder
// n <= delta^{k0} B.  Inside shell k every d <= delta^{4k} B^2 satisfies
// d < n^4/B^2, and every d < n^4/B^2 satisfies d <= delta^{4(k-1)} B^2,
// which gives exact lower and upper bounds for T(B) in terms of S.
//
// delta is irrational, so the check runs twice, with delta replaced by
// exact rationals just below and just above it.  The inequalities hold
// for any delta in (0, 1), so both runs must pass.
#include <cmath>
#include <string>

#include <gmpxx.h>

#include "qpc/count.hpp"

namespace qpc {

namespace {

u64 floor_u64(const mpq_class& q) {
  mpz_class f;
  mpz_fdiv_q(f.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  if (!f.fits_ulong_p()) throw std::overflow_error("shell bound does not fit 64 bits");
  return f.get_ui();
}

TelescopeBracket run_bracket(const SpfSieve& sieve, u64 B, int k0, const mpq_class& delta,
                             u128 t_value, const ParallelOptions& opts) {
  std::vector<u64> x(k0 + 1), y(k0 + 1);
  const mpq_class b(static_cast<unsigned long>(B));
  mpq_class pw = 1;  // delta^k
  for (int k = 0; k <= k0; ++k) {
    mpq_class pw4 = pw * pw;
    pw4 *= pw4;
    x[k] = floor_u64(pw * b);
    y[k] = floor_u64(pw4 * b * b);
    pw *= delta;
  }

  auto S = [&](u64 xx, u64 yy) { return s_exact(sieve, xx, RationalBound::integer(yy), opts); };

  TelescopeBracket r;
  u128 shells = 0;
  for (int k = 1; k <= k0; ++k) {
    r.lower_sum += S(x[k - 1], y[k]) - S(x[k], y[k]);
    r.upper_sum += S(x[k - 1], y[k - 1]) - S(x[k], y[k - 1]);
    shells += t_range(sieve, x[k], x[k - 1], B, opts);
  }
  r.remainder_bound = S(x[k0], y[k0]);
  shells += t_range(sieve, 0, x[k0], B, opts);

  r.lower_ok = t_value >= r.lower_sum;
  r.partition_ok = shells == t_value;
  r.upper_ok = t_value <= r.upper_sum + r.remainder_bound;
  const double b3 = static_cast<double>(B) * B * B;
  r.witnessed_c = t_value > r.upper_sum ? static_cast<double>(t_value - r.upper_sum) / b3 : 0.0;
  return r;
}

}  // namespace

TelescopeReport telescoping_check(const SpfSieve& sieve, u64 B, const ParallelOptions& opts) {
  if (B < 10) throw std::domain_error("telescoping_check requires B >= 10");

  const long double logb = std::log(static_cast<long double>(B));
  const long double delta = 1.0L - 1.0L / logb;
  const long double target = 1.0L / (logb * logb * logb);

  TelescopeReport rep;
  rep.B = B;
  long double pw = 1.0L;
  while (pw >= target) {
    pw *= delta;
    ++rep.k0;
  }

  // Outward rounding to multiples of 2^-64, with a few units of slack for
  // the error in evaluating delta itself.
  const long double scaled = std::ldexp(delta, 64);
  const mpz_class lo_num(qpc::to_string(static_cast<u128>(std::floor(scaled)) - 4));
  const mpz_class hi_num(qpc::to_string(static_cast<u128>(std::ceil(scaled)) + 4));
  mpz_class two64 = 1;
  two64 <<= 64;
  mpq_class delta_lo(lo_num, two64);
  mpq_class delta_hi(hi_num, two64);
  delta_lo.canonicalize();
  delta_hi.canonicalize();

  rep.t_value = t_exact(sieve, B, opts);
  rep.below = run_bracket(sieve, B, rep.k0, delta_lo, rep.t_value, opts);
  rep.above = run_bracket(sieve, B, rep.k0, delta_hi, rep.t_value, opts);
  rep.lower_ok = rep.below.lower_ok && rep.above.lower_ok;
  rep.partition_ok = rep.below.partition_ok && rep.above.partition_ok;
  return rep;
}

}  // namespace qpc
