// Serial reference: sums r4*(d) over d = n^4/m^2, m | n^2, exactly as the
// counting identities are written.  No pruning, no parallelism.
#include "qpc/count.hpp"

namespace qpc::reference {

namespace {

void check_sieve(const SpfSieve& sieve, u128 hi) {
  if (hi > sieve.limit()) {
    throw ResourceError("bound exceeds sieve limit " + std::to_string(sieve.limit()));
  }
}

}  // namespace

u128 s_exact(const SpfSieve& sieve, u64 x, const RationalBound& y) {
  if (x == 0 || y.below_one()) return 0;
  check_sieve(sieve, x);
  u128 total = 0;
  for (u64 n = 1; n <= x; ++n) {
    for (const auto& [m, d] : square_divisor_pairs(factorize(n, sieve))) {
      if (y.admits(d.value())) total = checked_add(total, r4_star(d));
    }
  }
  return total;
}

u128 t_exact(const SpfSieve& sieve, u64 B) {
  if (B == 0) return 0;
  check_sieve(sieve, B);
  u128 total = 0;
  for (u64 n = 1; n <= B; ++n) {
    const u128 n4 = u128{n} * n * n * n;
    for (const auto& [m, d] : square_divisor_pairs(factorize(n, sieve))) {
      // d < n^4 / B^2
      if (d.value() * B * B < n4) total = checked_add(total, r4_star(d));
    }
  }
  return total;
}

u128 n_star(const SpfSieve& sieve, const RationalBound& bound) {
  if (bound.below_one()) return 0;
  const u128 nmax = bound.floor();
  check_sieve(sieve, nmax);
  // d <= bound^2  <=>  d den^2 <= num^2
  const RationalBound squared(checked_mul(bound.numerator(), bound.numerator()),
                              checked_mul(bound.denominator(), bound.denominator()));
  u128 total = 0;
  for (u64 n = 1; n <= nmax; ++n) {
    for (const auto& [m, d] : square_divisor_pairs(factorize(n, sieve))) {
      if (bound.admits(m) && squared.admits(d.value())) total = checked_add(total, r4_star(d));
    }
  }
  return checked_mul(u128{32}, total);
}

u128 n_u(const SpfSieve& sieve, const RationalBound& bound) {
  if (bound.below_one()) return 0;
  const u128 kmax = bound.floor();
  check_sieve(sieve, kmax);
  i128 total = 0;
  for (u64 k = 1; k <= kmax; ++k) {
    const int mu = mobius(factorize(k, sieve));
    if (mu == 0) continue;
    const auto term = static_cast<i128>(reference::n_star(sieve, bound.divided_by(k)));
    total = checked_add(total, mu > 0 ? term : -term);
  }
  if (total < 0) throw std::logic_error("negative primitive count");
  return static_cast<u128>(total);
}

}  // namespace qpc::reference
