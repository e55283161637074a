#include <algorithm>
#include <cmath>
#include <sstream>

#include "qpc/asymptotics.hpp"

namespace qpc {

namespace {

// Dusart: x/ln x (1 + 1/ln x) <= pi(x) for x >= 599,
//         pi(x) <= x/ln x (1 + 1.2762/ln x) for x > 1.
constexpr double kPiLowerA = 1.0;
constexpr double kPiUpperA = 1.2762;

double e1(double x) { return -std::expint(-x); }

}  // namespace

EulerValue euler_product_C4(u64 prime_limit) {
  const ZetaValue z5 = zeta(5.0);
  const auto primes = primes_up_to(prime_limit);
  long double prod = 1.0L;
  for (u64 p : primes) {
    const long double t = 1.0L / static_cast<long double>(p);
    prod *= (1 + t + 2 * t * t + 2 * t * t * t + t * t * t * t + t * t * t * t * t) * (1 - t);
  }
  const long double raw = 23.0L / 150.0L * z5.value * prod;
  const double rounding = 4.0 * static_cast<double>(primes.size() + 2) * 1.1e-19 +
                          23.0 / 150.0 * z5.error_bound;

  EulerValue out;
  if (prime_limit < kTailCorrectionFrom) {
    // Each missing factor is 1 + t^2 - t^4 - t^6 in (1, 1 + t^2), and
    // sum_{n > P} n^{-2} <= 1/P.
    out.value = static_cast<double>(raw);
    const double sq_tail = 1.0 / static_cast<double>(std::max<u64>(prime_limit, 1));
    out.tail_bound = out.value * std::expm1(sq_tail) + rounding;
    return out;
  }

  // sum_{p > P} p^{-2} = -pi(P)/P^2 + 2 int_P^inf pi(t) t^{-3} dt, and
  // int_P^inf dt/(t^2 ln t) = E1(L), int_P^inf dt/(t^2 ln^2 t) = 1/(P L) - E1(L)
  // with L = ln P.  The estimate replaces pi by li: (li(P) - pi(P))/P^2 + E1(L).
  const double P = static_cast<double>(prime_limit);
  const double L = std::log(P);
  const double pi_P = static_cast<double>(primes.size());
  const double j1 = e1(L);
  const double j2 = 1.0 / (P * L) - j1;
  const double base = -pi_P / (P * P);
  const double sq_lo = base + 2 * (j1 + kPiLowerA * j2);
  const double sq_hi = base + 2 * (j1 + kPiUpperA * j2);
  double sq_mid = (std::expint(L) - pi_P) / (P * P) + j1;
  sq_mid = std::clamp(sq_mid, sq_lo, sq_hi);

  // log(1 + t^2 - t^4 - t^6) lies in [t^2 - 2.5 t^4, t^2], and
  // sum_{p > P} p^{-4} <= 1/(3 P^3).
  const double log_lo = sq_lo - 2.5 / (3 * P * P * P);
  const double log_hi = sq_hi;
  const double log_mid = sq_mid;

  out.value = static_cast<double>(raw * std::exp(static_cast<long double>(log_mid)));
  const double spread = std::max(std::exp(log_hi) - std::exp(log_mid), std::exp(log_mid) - std::exp(log_lo));
  out.tail_bound = static_cast<double>(raw) * spread + rounding;
  return out;
}

double residue_kernel(double s, std::span<const u64> primes, u64 prime_limit) {
  const long double sl = s;
  const long double w = (5.0L - sl) / 4.0L;
  const long double g = g_value(s, static_cast<double>(w), primes, prime_limit).value;
  // (s-1) zeta((s+1)/2) = 2 (u-1) zeta(u), u = (s+1)/2
  const long double num = 32.0L * zeta_times_sm1(sl) * zeta_times_sm1((sl + 1) / 2) * g;
  return static_cast<double>(num / ((5 - sl) * (9 - sl) * sl * (sl + 1)));
}

ResiduePolynomial p_coefficients(u64 prime_limit, DerivativeDiagnostics* diag) {
  if (prime_limit < 1000) throw std::domain_error("p_coefficients needs prime_limit >= 1000");
  const auto primes = primes_up_to(prime_limit);
  auto h = [&](double s) { return residue_kernel(s, primes, prime_limit); };
  auto central = [&](double step) { return (h(1 + step) - h(1 - step)) / (2 * step); };

  // Central differences have error c h^2 + O(h^4); a factor 10 in step
  // gives the Richardson weights 100/99 and -1/99.
  DerivativeDiagnostics d;
  d.d_coarse = central(1e-3);
  d.d_fine = central(1e-4);
  d.richardson = (100 * d.d_fine - d.d_coarse) / 99;
  d.richardson_alt = (100 * central(2e-4) - central(2e-3)) / 99;
  if (diag) *diag = d;

  ResiduePolynomial P;
  P.c1 = h(1.0);
  P.c0 = d.richardson;
  P.c0_error = std::fabs(d.richardson - d.richardson_alt) + std::fabs(d.d_fine - d.d_coarse) / 99;

  const EulerValue g11 = g_value(1.0, 1.0, primes, prime_limit);
  P.c1_error = g11.tail_bound / 2 + 1e-15;
  if (std::fabs(P.c1 - g11.value / 2) > 1e-12) {
    std::ostringstream os;
    os.precision(17);
    os << "residue mismatch: h(1) = " << P.c1 << ", G(1,1)/2 = " << g11.value / 2;
    throw NumericalError(os.str());
  }
  if (!(P.c0_error <= 1e-5 * std::fabs(P.c0))) {
    std::ostringstream os;
    os.precision(17);
    os << "unstable derivative: D(1e-3) = " << d.d_coarse << ", D(1e-4) = " << d.d_fine
       << ", richardson = " << d.richardson << ", richardson(2e-3, 2e-4) = " << d.richardson_alt;
    throw NumericalError(os.str());
  }
  return P;
}

}  // namespace qpc
