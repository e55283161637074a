// Exact point counts on x^4 = (y1^2+y2^2+y3^2+y4^2) z^2.
//
// Every count reduces to sums of r4*(d) over the divisors d of n^4 whose
// cofactor n^4/d is a square.  Writing d = n^4/m^2 with m | n^2 and
// putting q = n^2/m, one has d = q^2, and a solution with |x| = n has
// |z| = m and sqrt(y1^2+..+y4^2) = q.  Its height is max(m, q) (always >= n).
//
//   S(x, y) = sum_{n <= x} sum_{q | n^2, q^2 <= y}        r4*(q^2)
//   T(B)    = sum_{n <= B} sum_{q | n^2, q B < n^2}       r4*(q^2)
//   N*(R)   = 32 sum_{n} sum_{q | n^2, max(q, n^2/q) <= R} r4*(q^2)
//   N_u(R)  = sum_{k} mu(k) N*(R/k)
//           = 32 sum_{n} sum_{q} r4*(q^2) M(floor(R / max(q, n^2/q)))
// with M the Mertens function.
//
// The functions in this header are the OpenMP kernels.  The namespace
// qpc::reference holds a serial implementation written directly from the
// d = n^4/m^2 form; it is kept for testing and benchmarking only.
#pragma once

#include <optional>
#include <string>

#include "qpc/arith.hpp"

namespace qpc {

struct ParallelOptions {
  int threads = 0;          // 0: OpenMP default
  u64 chunk = 65'536;       // n values per work item
};

// Largest n any kernel accepts; keeps n^4 and sigma(n^4) inside 128 bits.
inline constexpr u64 kMaxKernelN = u64{1} << 31;

// Sum over n <= x and divisors d of n^4 with square cofactor, d <= y.
u128 s_exact(const SpfSieve& sieve, u64 x, const RationalBound& y, const ParallelOptions& opts = {});

// Sum over n <= B and divisors d of n^4 with square cofactor, d < n^4/B^2.
u128 t_exact(const SpfSieve& sieve, u64 B, const ParallelOptions& opts = {});

// T(B) restricted to lo < n <= hi.
u128 t_range(const SpfSieve& sieve, u64 lo, u64 hi, u64 B, const ParallelOptions& opts = {});

// Integer tuples of height <= bound on the hypersurface with x != 0.
u128 n_star(const SpfSieve& sieve, const RationalBound& bound, const ParallelOptions& opts = {});

// Primitive integer tuples of height <= bound with x != 0.  Each
// projective point is counted twice (v and -v).
u128 n_u(const SpfSieve& sieve, const RationalBound& bound, const ParallelOptions& opts = {});

// Caps on the exhaustive oracles.
inline constexpr u64 kBruteStarCap = 60;
inline constexpr u64 kBrutePrimitiveCap = 40;

// Enumerates (x, z) with x^4 = d z^2 and weights each by a brute-force r4
// table.  Throws std::domain_error above kBruteStarCap.
u128 brute_force_star(u64 B);

// Enumerates every 6-tuple of height <= B on the hypersurface with
// x z != 0 and gcd 1.  Throws std::domain_error above kBrutePrimitiveCap.
u128 brute_force_primitive(u64 B);

struct PartitionWitness {
  u64 B = 0;
  u128 s_part = 0;  // S(B, B^2)
  u128 t_part = 0;  // T(B)
  u128 n_star = 0;

  bool consistent() const { return s_part >= t_part && n_star == 32 * (s_part - t_part); }
};

PartitionWitness partition_witness(const SpfSieve& sieve, u64 B, const ParallelOptions& opts = {});

// One side of the outward-rounded bracket around delta = 1 - 1/log B.
struct TelescopeBracket {
  bool lower_ok = false;      // T(B) >= sum of S-differences over the shells
  bool partition_ok = false;  // shells plus remainder reproduce T(B)
  bool upper_ok = false;      // T(B) <= upper S-differences plus the remainder bound
  u128 lower_sum = 0;
  u128 upper_sum = 0;
  u128 remainder_bound = 0;   // S(delta^k0 B, delta^{4 k0} B^2)
  double witnessed_c = 0;     // max(0, T - upper_sum) / B^3
};

struct TelescopeReport {
  u64 B = 0;
  int k0 = 0;
  u128 t_value = 0;
  TelescopeBracket below;  // delta rounded down
  TelescopeBracket above;  // delta rounded up
  bool lower_ok = false;
  bool partition_ok = false;
};

// Requires B >= 10.
TelescopeReport telescoping_check(const SpfSieve& sieve, u64 B, const ParallelOptions& opts = {});

struct CountRecord {
  std::string kind;
  u64 bound = 0;
  u128 exact_count = 0;
  std::optional<double> predicted_main;
  std::optional<double> ratio;
  double elapsed = 0;
};

namespace reference {

u128 s_exact(const SpfSieve& sieve, u64 x, const RationalBound& y);
u128 t_exact(const SpfSieve& sieve, u64 B);
u128 n_star(const SpfSieve& sieve, const RationalBound& bound);
// Literal Moebius inversion sum_{k <= bound} mu(k) n_star(bound/k).
u128 n_u(const SpfSieve& sieve, const RationalBound& bound);

}  // namespace reference

}  // namespace qpc
