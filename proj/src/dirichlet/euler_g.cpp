#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

#include <omp.h>

#include "qpc/dirichlet.hpp"

namespace qpc {

namespace {

constexpr std::size_t kPrimeBlock = 4096;

void check_domain(double s, double w) {
  if (!(min_exponent(s, w) >= 0.5 + kConvergenceMargin)) {
    throw std::domain_error("G(s, w) outside its absolute-convergence domain");
  }
}

// |G_p(s, w) - 1| <= sum_i |c_i| p^{g_i} / (1 - p^{-b}) for p > 2, where
// c_i p^{g_i} are the monomials of N_p (1 - p^{2-a}) - 1 + p^{-b},
// a = s + 2w, b = s + 4w, c = 2s + 6w, and N_p is the numerator of G_p.
std::vector<std::pair<double, double>> g_minus_one_monomials(double s, double w) {
  const double a = s + 2 * w, b = s + 4 * w, c = 2 * s + 6 * w;
  const std::pair<double, double> num[] = {{1, 0},     {1, 2 - a}, {1, 1 - a}, {1, -a},
                                           {1, 3 - b}, {1, 2 - b}, {1, 1 - b}, {1, 3 - c}};
  const std::pair<double, double> fac[] = {{1, 0}, {-1, 2 - a}};
  std::vector<std::pair<double, double>> terms;  // (exponent, coefficient)
  auto add = [&](double g, double coef) {
    for (auto& t : terms) {
      if (t.first == g) {
        t.second += coef;
        return;
      }
    }
    terms.emplace_back(g, coef);
  };
  for (const auto& [cn, gn] : num) {
    for (const auto& [cf, gf] : fac) add(gn + gf, cn * cf);
  }
  add(-b, 1);
  add(0, -1);
  std::erase_if(terms, [](const auto& t) { return t.second == 0; });
  return terms;
}

// Bound on sum_{p > M} |log G_p(s, w)| for M >= 2.
double tail_log_bound(double s, double w, u64 M) {
  const auto terms = g_minus_one_monomials(s, w);
  const double b = s + 4 * w;
  const double m = static_cast<double>(M);
  const double first = m + 1;
  const double denom = 1 - std::pow(first, -b);
  double sum = 0;
  double at_first = 0;  // bound on |G_p - 1| at p = M + 1, decreasing in p
  for (const auto& [g, c] : terms) {
    if (!(g < -1)) return std::numeric_limits<double>::infinity();
    sum += std::fabs(c) * std::pow(m, g + 1) / (-g - 1);  // >= sum_{n > M} n^g
    at_first += std::fabs(c) * std::pow(first, g);
  }
  sum /= denom;
  at_first /= denom;
  if (at_first >= 0.5) return std::numeric_limits<double>::infinity();
  return sum / (1 - at_first);  // |log(1+u)| <= |u| / (1 - |u|)
}

}  // namespace

double min_exponent(double s, double w) {
  return std::min({s, s + 2 * w - 2, s + 4 * w - 4});
}

long double g_local(u64 p, long double s, long double w) {
  const long double P = static_cast<long double>(p);
  const long double a = s + 2 * w, b = s + 4 * w;
  if (p == 2) {
    return (1 + 3 * std::pow(2.0L, -a) + std::pow(2.0L, 1 - b)) / (1 - std::pow(2.0L, -b)) *
           (1 - std::pow(2.0L, -(a - 2))) * (1 - std::pow(2.0L, -(b - 4)));
  }
  const long double num = 1 + (P * P + P + 1) * std::pow(P, -a) +
                          (P * P * P + P * P + P) * std::pow(P, -b) +
                          P * P * P * std::pow(P, -(2 * s + 6 * w));
  return num * (1 - std::pow(P, 2 - a)) / (1 - std::pow(P, -b));
}

std::vector<u64> primes_up_to(u64 limit) {
  if (limit < 2) return {};
  return build_spf_sieve(limit).primes_up_to(limit);
}

EulerValue g_value(double s, double w, std::span<const u64> primes, u64 prime_limit) {
  check_domain(s, w);
  // Fixed-size blocks multiplied in block order: the rounding pattern does
  // not depend on the thread count.
  const std::size_t n = primes.size();
  const std::int64_t blocks = static_cast<std::int64_t>((n + kPrimeBlock - 1) / kPrimeBlock);
  std::vector<long double> partial(blocks, 1.0L);
#pragma omp parallel for schedule(static)
  for (std::int64_t blk = 0; blk < blocks; ++blk) {
    long double prod = 1.0L;
    const std::size_t end = std::min(n, static_cast<std::size_t>(blk + 1) * kPrimeBlock);
    for (std::size_t i = static_cast<std::size_t>(blk) * kPrimeBlock; i < end; ++i) {
      if (primes[i] > prime_limit) break;
      prod *= g_local(primes[i], s, w);
    }
    partial[blk] = prod;
  }
  long double value = 1.0L;
  for (long double v : partial) value *= v;

  double log_bound = tail_log_bound(s, w, std::max<u64>(prime_limit, 2));
  if (prime_limit < 2) log_bound += std::fabs(std::log(g_local(2, s, w)));
  EulerValue out;
  out.value = static_cast<double>(value);
  const double rounding = 4.0 * static_cast<double>(n + 1) * 1.1e-19 * std::fabs(out.value);
  out.tail_bound = std::fabs(out.value) * std::expm1(log_bound) + rounding;
  return out;
}

EulerValue g_value(double s, double w, u64 prime_limit) {
  const auto primes = primes_up_to(prime_limit);
  return g_value(s, w, primes, prime_limit);
}

double global_series_check(const SpfSieve& sieve, double s, double w, u64 N, u64 prime_limit) {
  if (!(s > 5) || !(w > 0)) throw std::domain_error("global_series_check needs s > 5, w > 0");
  if (N > sieve.limit()) throw ResourceError("global_series_check: N exceeds sieve limit");
  long double lhs = 0;
  for (u64 n = 1; n <= N; ++n) {
    long double inner = 0;
    for (const auto& [m, d] : square_divisor_pairs(factorize(n, sieve))) {
      inner += static_cast<long double>(r4_star(d)) *
               std::pow(static_cast<long double>(d.value()), static_cast<long double>(-w));
    }
    lhs += inner * std::pow(static_cast<long double>(n), static_cast<long double>(-s));
  }
  const long double rhs = zeta_ld(s) * zeta_ld(s + 2 * w - 2) * zeta_ld(s + 4 * w - 4) *
                          static_cast<long double>(g_value(s, w, prime_limit).value);
  return static_cast<double>(std::fabs(lhs - rhs));
}

}  // namespace qpc
