#include <exception>
#include <string>
#include <vector>

#include <omp.h>

#include "qpc/count.hpp"

namespace qpc {

namespace {

struct SquareFactor {
  u64 p;
  unsigned max_e;  // exponent in n^2
};

// Walks the divisors q of n^2 with q <= bound.  For each, calls
// visit(q, r4*(q^2)).  Exponents of a prime increase monotonically inside
// a level, so the walk stops a level as soon as q exceeds the bound.
template <typename Visit>
void walk(const SquareFactor* f, int k, u128 q, u128 weight, u128 bound, Visit& visit) {
  if (k == 0) {
    visit(q, weight);
    return;
  }
  const u64 p = f->p;
  walk(f + 1, k - 1, q, weight, bound, visit);
  u128 pe = 1;      // p^e
  u128 sigma = 1;   // 1 + p + ... + p^{2e}
  for (unsigned e = 1; e <= f->max_e; ++e) {
    pe *= p;
    if (q * pe > bound) break;
    u128 w;
    if (p == 2) {
      w = 3;
    } else {
      const u128 pe2 = pe * pe;
      sigma += pe2 / p + pe2;
      w = sigma;
    }
    walk(f + 1, k - 1, q * pe, weight * w, bound, visit);
  }
}

struct NFactors {
  SquareFactor f[16];
  int k = 0;
};

inline NFactors square_factors(u64 n, const SpfSieve& sieve) {
  NFactors out;
  while (n > 1) {
    const u64 p = sieve.spf(n);
    unsigned e = 0;
    do {
      n /= p;
      ++e;
    } while (n % p == 0);
    out.f[out.k++] = {p, 2 * e};
  }
  return out;
}

void check_range(const SpfSieve& sieve, u64 hi) {
  if (hi > sieve.limit()) {
    throw ResourceError("bound " + std::to_string(hi) + " exceeds sieve limit " +
                        std::to_string(sieve.limit()));
  }
  if (hi > kMaxKernelN) {
    throw ResourceError("bound " + std::to_string(hi) + " exceeds kernel range");
  }
}

// Sums per_n(n) over lo < n <= hi.  The range is cut into fixed chunks
// independent of the thread count and the chunk totals are added in chunk
// order, so the result does not depend on scheduling.
template <typename PerN>
i128 parallel_sum(u64 lo, u64 hi, const ParallelOptions& opts, PerN per_n) {
  if (hi <= lo) return 0;
  const u64 chunk = opts.chunk == 0 ? 65'536 : opts.chunk;
  const u64 span = hi - lo;
  const std::int64_t chunks = static_cast<std::int64_t>((span + chunk - 1) / chunk);
  std::vector<i128> partial(chunks, 0);
  std::exception_ptr failure;
  const int threads = opts.threads > 0 ? opts.threads : omp_get_max_threads();

#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
  for (std::int64_t c = 0; c < chunks; ++c) {
    try {
      const u64 a = lo + 1 + static_cast<u64>(c) * chunk;
      const u64 b = (hi - a + 1 < chunk) ? hi : a + chunk - 1;
      i128 acc = 0;
      for (u64 n = a; n <= b; ++n) acc = checked_add(acc, per_n(n));
      partial[c] = acc;
    } catch (...) {
#pragma omp critical(qpc_kernel_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);

  i128 total = 0;
  for (i128 v : partial) total = checked_add(total, v);
  return total;
}

}  // namespace

u128 s_exact(const SpfSieve& sieve, u64 x, const RationalBound& y, const ParallelOptions& opts) {
  if (x == 0 || y.below_one()) return 0;
  check_range(sieve, x);
  const u128 qmax = isqrt(y.floor());
  const i128 s = parallel_sum(0, x, opts, [&](u64 n) -> i128 {
    NFactors nf = square_factors(n, sieve);
    u128 acc = 0;
    auto visit = [&](u128, u128 w) { acc += w; };
    walk(nf.f, nf.k, 1, 1, qmax, visit);
    return static_cast<i128>(acc);
  });
  return static_cast<u128>(s);
}

u128 t_range(const SpfSieve& sieve, u64 lo, u64 hi, u64 B, const ParallelOptions& opts) {
  if (B == 0 || hi <= lo) return 0;
  check_range(sieve, hi);
  const i128 s = parallel_sum(lo, hi, opts, [&](u64 n) -> i128 {
    const u128 n2 = u128{n} * n;
    const u128 qmax = (n2 - 1) / B;  // q B < n^2
    if (qmax == 0) return 0;
    NFactors nf = square_factors(n, sieve);
    u128 acc = 0;
    auto visit = [&](u128, u128 w) { acc += w; };
    walk(nf.f, nf.k, 1, 1, qmax, visit);
    return static_cast<i128>(acc);
  });
  return static_cast<u128>(s);
}

u128 t_exact(const SpfSieve& sieve, u64 B, const ParallelOptions& opts) {
  return t_range(sieve, 0, B, B, opts);
}

u128 n_star(const SpfSieve& sieve, const RationalBound& bound, const ParallelOptions& opts) {
  if (bound.below_one()) return 0;
  const u128 rmax = bound.floor();
  check_range(sieve, static_cast<u64>(rmax > kMaxKernelN ? kMaxKernelN + 1 : rmax));
  const u128 num = bound.numerator();
  const u128 den = bound.denominator();
  const i128 s = parallel_sum(0, static_cast<u64>(rmax), opts, [&](u64 n) -> i128 {
    const u128 n2 = u128{n} * n;
    // n^2/q <= num/den  <=>  q >= n^2 den / num
    const u128 qmin = (checked_mul(n2, den) + num - 1) / num;
    if (qmin > rmax) return 0;
    NFactors nf = square_factors(n, sieve);
    u128 acc = 0;
    auto visit = [&](u128 q, u128 w) {
      if (q >= qmin) acc += w;
    };
    walk(nf.f, nf.k, 1, 1, rmax, visit);
    return static_cast<i128>(acc);
  });
  return checked_mul(u128{32}, static_cast<u128>(s));
}

u128 n_u(const SpfSieve& sieve, const RationalBound& bound, const ParallelOptions& opts) {
  if (bound.below_one()) return 0;
  const u128 rmax = bound.floor();
  check_range(sieve, static_cast<u64>(rmax > kMaxKernelN ? kMaxKernelN + 1 : rmax));
  const u128 num = bound.numerator();
  const u128 den = bound.denominator();
  const auto mertens = mertens_table(sieve, static_cast<u64>(rmax));
  const i128 s = parallel_sum(0, static_cast<u64>(rmax), opts, [&](u64 n) -> i128 {
    const u128 n2 = u128{n} * n;
    const u128 qmin = (checked_mul(n2, den) + num - 1) / num;
    if (qmin > rmax) return 0;
    NFactors nf = square_factors(n, sieve);
    i128 acc = 0;
    auto visit = [&](u128 q, u128 w) {
      if (q < qmin) return;
      const u128 m = n2 / q;
      const u128 h = q > m ? q : m;
      // k h <= num/den  <=>  k <= num / (den h)
      const u128 kmax = num / (den * h);
      acc += static_cast<i128>(w) * mertens[static_cast<std::size_t>(kmax)];
    };
    walk(nf.f, nf.k, 1, 1, rmax, visit);
    return acc;
  });
  if (s < 0) throw std::logic_error("negative primitive count");
  return checked_mul(u128{32}, static_cast<u128>(s));
}

PartitionWitness partition_witness(const SpfSieve& sieve, u64 B, const ParallelOptions& opts) {
  PartitionWitness w;
  w.B = B;
  w.s_part = s_exact(sieve, B, RationalBound::integer(u128{B} * B), opts);
  w.t_part = t_exact(sieve, B, opts);
  w.n_star = n_star(sieve, RationalBound::integer(B), opts);
  return w;
}

}  // namespace qpc
