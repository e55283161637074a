#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "qpc/count.hpp"

using namespace qpc;

namespace {

const SpfSieve& sieve() {
  static const SpfSieve s = build_spf_sieve(20'000);
  return s;
}

RationalBound R(u128 v) { return RationalBound::integer(v); }

// Divisors of v by trial division up to sqrt(v).
std::vector<u128> divisors_of(u128 v) {
  std::vector<u128> lo, hi;
  for (u128 l = 1; l * l <= v; ++l) {
    if (v % l) continue;
    lo.push_back(l);
    if (l * l != v) hi.push_back(v / l);
  }
  lo.insert(lo.end(), hi.rbegin(), hi.rend());
  return lo;
}

struct Term {
  u128 d;
  u128 weight;  // r4*(d)
};

// Divisors d of n^4 with n^4/d a perfect square, each with r4*(d) summed
// over the divisors of n^4 that divide d and are not multiples of 4.
std::vector<Term> naive_terms(u64 n) {
  const u128 n4 = u128{n} * n * n * n;
  const auto divs = divisors_of(n4);
  std::vector<Term> out;
  for (u128 d : divs) {
    const u128 c = n4 / d;
    const u128 r = isqrt(c);
    if (r * r != c) continue;
    u128 w = 0;
    for (u128 l : divs) {
      if (l > d) break;
      if (d % l == 0 && l % 4 != 0) w += l;
    }
    out.push_back({d, w});
  }
  return out;
}

const std::vector<std::vector<Term>>& naive_table() {
  static const auto table = [] {
    std::vector<std::vector<Term>> t(501);
    for (u64 n = 1; n <= 500; ++n) t[n] = naive_terms(n);
    return t;
  }();
  return table;
}

}  // namespace

TEST_CASE("s_exact examples") {
  for (u128 y : {1, 2, 100, 1'000'000}) CHECK(s_exact(sieve(), 1, R(y)) == 1);
  CHECK(s_exact(sieve(), 2, R(4)) == 5);
  CHECK(s_exact(sieve(), 2, R(16)) == 8);
  CHECK(s_exact(sieve(), 3, R(9)) == 19);
  CHECK(s_exact(sieve(), 0, R(9)) == 0);
  CHECK(s_exact(sieve(), 5, RationalBound(1, 2)) == 0);
}

TEST_CASE("t_exact examples") {
  CHECK(t_exact(sieve(), 0) == 0);
  CHECK(t_exact(sieve(), 1) == 0);
  CHECK(t_exact(sieve(), 2) == 1);
  CHECK(t_exact(sieve(), 3) == 2);
}

TEST_CASE("values frozen from an independent computation") {
  // Direct enumeration of d | n^4 with square cofactor and r4*(d) as a
  // divisor sum, computed outside this code base.
  CHECK(s_exact(sieve(), 10, R(100)) == 699);
  CHECK(s_exact(sieve(), 30, R(900)) == 19854);
  CHECK(s_exact(sieve(), 50, R(1234)) == 37149);
  CHECK(s_exact(sieve(), 100, R(10000)) == 795036);
  CHECK(s_exact(sieve(), 100, R(777777)) == 31380581);
  CHECK(t_exact(sieve(), 10) == 79);
  CHECK(t_exact(sieve(), 30) == 3914);
  CHECK(t_exact(sieve(), 100) == 124184);
  CHECK(t_exact(sieve(), 200) == 1131354);
  CHECK(n_star(sieve(), R(10)) == 19840);
  CHECK(n_star(sieve(), R(30)) == 510080);
  CHECK(n_star(sieve(), R(100)) == 21467264);
  CHECK(n_star(sieve(), R(200)) == 171468864);
}

TEST_CASE("n_star and n_u examples") {
  CHECK(n_star(sieve(), R(0)) == 0);
  CHECK(n_star(sieve(), R(1)) == 32);
  CHECK(n_star(sieve(), R(2)) == 128);
  CHECK(n_star(sieve(), R(3)) == 544);
  CHECK(n_u(sieve(), R(0)) == 0);
  CHECK(n_u(sieve(), R(1)) == 32);
  CHECK(n_u(sieve(), R(2)) == 96);
  CHECK(n_u(sieve(), R(3)) == 480);
}

TEST_CASE("partition witness examples") {
  const auto w1 = partition_witness(sieve(), 1);
  CHECK(w1.s_part == 1);
  CHECK(w1.t_part == 0);
  CHECK(w1.n_star == 32);
  const auto w2 = partition_witness(sieve(), 2);
  CHECK(w2.s_part == 5);
  CHECK(w2.t_part == 1);
  CHECK(w2.n_star == 128);
  const auto w3 = partition_witness(sieve(), 3);
  CHECK(w3.s_part == 19);
  CHECK(w3.t_part == 2);
  CHECK(w3.n_star == 544);
  for (u64 B = 1; B <= 300; ++B) CHECK(partition_witness(sieve(), B).consistent());
}

TEST_CASE("brute-force oracles") {
  CHECK(brute_force_star(0) == 0);
  CHECK(brute_force_star(1) == 32);
  CHECK(brute_force_star(2) == 128);
  CHECK(brute_force_star(3) == 544);
  CHECK(brute_force_primitive(1) == 32);
  CHECK(brute_force_primitive(2) == 96);
  CHECK(brute_force_primitive(3) == 480);
  CHECK_THROWS_AS(brute_force_star(kBruteStarCap + 1), std::domain_error);
  CHECK_THROWS_AS(brute_force_primitive(kBrutePrimitiveCap + 1), std::domain_error);
  for (u64 B = 0; B <= 25; ++B) {
    CHECK(n_star(sieve(), R(B)) == brute_force_star(B));
    CHECK(n_u(sieve(), R(B)) == brute_force_primitive(B));
  }
}

TEST_CASE("s_exact and t_exact against the naive double loop") {
  const auto& table = naive_table();
  std::mt19937_64 rng(500);
  for (u64 x = 1; x <= 500; ++x) {
    const double top = 4 * std::log(static_cast<double>(x)) + 1;
    std::uniform_real_distribution<double> log_y(0.0, top);
    for (int i = 0; i < 20; ++i) {
      // Half the bounds are rational, to exercise the cross-multiplied test.
      const u128 den = i % 2 ? 1 + (rng() % 7) : 1;
      const u128 num = static_cast<u128>(std::exp(log_y(rng)) * static_cast<double>(den)) + 1;
      const RationalBound y(num, den);
      u128 expect = 0;
      for (u64 n = 1; n <= x; ++n) {
        for (const auto& t : table[n]) {
          if (y.admits(t.d)) expect += t.weight;
        }
      }
      CHECK(s_exact(sieve(), x, y) == expect);
    }

    const u128 B2 = u128{x} * x;
    u128 t_expect = 0;
    for (u64 n = 1; n <= x; ++n) {
      const u128 n4 = u128{n} * n * n * n;
      for (const auto& t : table[n]) {
        if (t.d * B2 < n4) t_expect += t.weight;
      }
    }
    CHECK(t_exact(sieve(), x) == t_expect);
  }
}

TEST_CASE("kernels agree with the serial reference") {
  for (u64 B = 0; B <= 200; B += 7) {
    CHECK(n_star(sieve(), R(B)) == reference::n_star(sieve(), R(B)));
    CHECK(n_u(sieve(), R(B)) == reference::n_u(sieve(), R(B)));
    CHECK(t_exact(sieve(), B) == reference::t_exact(sieve(), B));
    CHECK(s_exact(sieve(), B, R(u128{B} * B)) == reference::s_exact(sieve(), B, R(u128{B} * B)));
  }
  const RationalBound r(1234, 7);
  CHECK(n_star(sieve(), r) == reference::n_star(sieve(), r));
  CHECK(n_u(sieve(), r) == reference::n_u(sieve(), r));
}

TEST_CASE("results do not depend on threads or chunking") {
  const u64 B = 20'000;
  const u128 base_star = n_star(sieve(), R(B), {1, 65'536});
  const u128 base_u = n_u(sieve(), R(B), {1, 65'536});
  const u128 base_t = t_exact(sieve(), B, {1, 65'536});
  for (int threads : {1, 2, 3, 8}) {
    for (u64 chunk : {u64{1}, u64{7}, u64{1000}, u64{65'536}}) {
      const ParallelOptions o{threads, chunk};
      CHECK(n_star(sieve(), R(B), o) == base_star);
      CHECK(n_u(sieve(), R(B), o) == base_u);
      CHECK(t_exact(sieve(), B, o) == base_t);
    }
  }
}

TEST_CASE("rational bounds act through their floor on heights") {
  // Heights are integers or square roots of integers below the next
  // integer, so only floor(R) matters.
  for (u64 B = 1; B <= 60; ++B) {
    for (u128 den : {2, 3, 7}) {
      const RationalBound r(u128{B} * den + den - 1, den);
      CHECK(n_star(sieve(), r) == n_star(sieve(), R(B)));
      CHECK(n_u(sieve(), r) == n_u(sieve(), R(B)));
    }
  }
}

TEST_CASE("monotonicity and saturation") {
  u128 prev = 0;
  for (u64 B = 0; B <= 400; ++B) {
    const u128 v = n_star(sieve(), R(B));
    CHECK(v >= prev);
    CHECK(v % 32 == 0);
    prev = v;
  }
  for (u64 x = 1; x <= 80; ++x) {
    // Every divisor of n^4 is at most x^4, so larger y changes nothing.
    const u128 x4 = u128{x} * x * x * x;
    const u128 full = s_exact(sieve(), x, R(x4));
    CHECK(s_exact(sieve(), x, R(x4 * 5)) == full);
    CHECK(s_exact(sieve(), x, R(x4 - 1)) <= full);
    // The d = 1 term contributes 1 for each n, and S(x, y) <= S(x, y') for y <= y'.
    CHECK(s_exact(sieve(), x, R(1)) == x);
    CHECK(s_exact(sieve(), x, R(x)) <= s_exact(sieve(), x, R(u128{x} * x)));
  }
}

TEST_CASE("primitive count bounded by the full count") {
  for (u64 B = 1; B <= 300; B += 13) {
    const u128 all = n_star(sieve(), R(B));
    const u128 prim = n_u(sieve(), R(B));
    CHECK(prim <= all);
    // N*(B) = sum_k N_u(B/k), so the k = 1 term cannot exceed the total.
    u128 total = 0;
    for (u64 k = 1; k <= B; ++k) total += n_u(sieve(), RationalBound(B, k));
    CHECK(total == all);
  }
}

TEST_CASE("resource limits") {
  const SpfSieve small = build_spf_sieve(100);
  CHECK_THROWS_AS(s_exact(small, 101, R(5)), ResourceError);
  CHECK_THROWS_AS(t_exact(small, 101), ResourceError);
  CHECK_THROWS_AS(n_star(small, R(101)), ResourceError);
  CHECK_THROWS_AS(n_u(small, R(101)), ResourceError);
  CHECK_NOTHROW(n_star(small, R(100)));
}

TEST_CASE("t_range partitions T") {
  const u64 B = 5000;
  const u128 whole = t_exact(sieve(), B);
  u128 sum = 0;
  u64 lo = 0;
  for (u64 hi : {u64{17}, u64{400}, u64{401}, u64{3333}, B}) {
    sum += t_range(sieve(), lo, hi, B);
    lo = hi;
  }
  CHECK(sum == whole);
  CHECK(t_range(sieve(), 10, 10, B) == 0);
}

TEST_CASE("telescoping sandwich") {
  CHECK_THROWS_AS(telescoping_check(sieve(), 9), std::domain_error);
  for (u64 B : {u64{10}, u64{100}, u64{1000}}) {
    const TelescopeReport r = telescoping_check(sieve(), B);
    CHECK(r.lower_ok);
    CHECK(r.partition_ok);
    CHECK(r.t_value == t_exact(sieve(), B));
    CHECK(r.below.lower_sum <= r.t_value);
    CHECK(r.above.lower_sum <= r.t_value);
    CHECK(r.below.upper_ok);
    CHECK(r.above.upper_ok);
    // k0 is the least k with delta^k < (log B)^-3, delta = 1 - 1/log B.
    const long double L = std::log(static_cast<long double>(B));
    const long double delta = 1 - 1 / L;
    const long double target = 1 / (L * L * L);
    int k = 1;
    while (std::pow(delta, k) >= target) ++k;
    CHECK(r.k0 == k);
  }
}
