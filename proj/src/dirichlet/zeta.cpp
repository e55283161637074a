// Riemann zeta on the real axis by Euler-Maclaurin summation:
//
//   zeta(u) = sum_{n<N} n^{-u} + N^{1-u}/(u-1) + N^{-u}/2
//           + sum_{k=1}^{K} B_{2k}/(2k)! u(u+1)...(u+2k-2) N^{-u-2k+1} + R_K
//
// For real u > -2K-1 the remainder is bounded by the first omitted term.
#include <array>
#include <cfloat>
#include <cmath>
#include <stdexcept>

#include "qpc/dirichlet.hpp"

namespace qpc {

namespace {

constexpr int kTerms = 30;     // N
constexpr int kBernoulli = 15;  // K

// B_2, B_4, ..., B_32
constexpr std::array<long double, 16> kB2k = {
    1.0L / 6,
    -1.0L / 30,
    1.0L / 42,
    -1.0L / 30,
    5.0L / 66,
    -691.0L / 2730,
    7.0L / 6,
    -3617.0L / 510,
    43867.0L / 798,
    -174611.0L / 330,
    854513.0L / 138,
    -236364091.0L / 2730,
    8553103.0L / 6,
    -23749461029.0L / 870,
    8615841276005.0L / 14322,
    -7709321041217.0L / 510,
};

struct Pieces {
  long double head = 0;        // sum_{n<N} n^{-u}
  long double half = 0;        // N^{-u}/2
  long double corrections = 0; // Bernoulli terms
  long double next = 0;        // |first omitted term|
  long double magnitude = 0;   // sum of |summands|, for rounding
};

Pieces em_pieces(long double u) {
  Pieces p;
  for (int n = 1; n < kTerms; ++n) {
    const long double t = std::pow(static_cast<long double>(n), -u);
    p.head += t;
    p.magnitude += std::fabs(t);
  }
  const long double N = kTerms;
  p.half = std::pow(N, -u) / 2;
  // term_k = B_{2k}/(2k)! * u(u+1)...(u+2k-2) * N^{-u-2k+1}
  long double rising = u;                  // u (u+1) ... (u+2k-2)
  long double fact = 2;                    // (2k)!
  long double npow = std::pow(N, -u - 1);  // N^{-u-2k+1}
  for (int k = 1; k <= kBernoulli + 1; ++k) {
    const long double term = kB2k[k - 1] / fact * rising * npow;
    if (k <= kBernoulli) {
      p.corrections += term;
      p.magnitude += std::fabs(term);
    } else {
      p.next = std::fabs(term);
    }
    rising *= (u + 2 * k - 1) * (u + 2 * k);
    fact *= (2 * k + 1) * (2 * k + 2);
    npow /= N * N;
  }
  return p;
}

}  // namespace

long double zeta_times_sm1(long double u) {
  if (!(u > 0)) throw std::domain_error("zeta_times_sm1 needs u > 0");
  const Pieces p = em_pieces(u);
  return (u - 1) * (p.head + p.half + p.corrections) + std::pow(static_cast<long double>(kTerms), 1 - u);
}

long double zeta_ld(long double u) {
  if (!(u > 0) || u == 1) throw std::domain_error("zeta_ld needs u > 0, u != 1");
  const Pieces p = em_pieces(u);
  return p.head + std::pow(static_cast<long double>(kTerms), 1 - u) / (u - 1) + p.half +
         p.corrections;
}

ZetaValue zeta(double s) {
  if (!(s >= 1 + 1e-6)) throw std::domain_error("zeta: s must be at least 1 + 1e-6");
  const long double u = s;
  const Pieces p = em_pieces(u);
  const long double pole = std::pow(static_cast<long double>(kTerms), 1 - u) / (u - 1);
  const long double v = p.head + pole + p.half + p.corrections;
  ZetaValue z;
  z.s = s;
  z.value = static_cast<double>(v);
  const long double rounding = 64 * LDBL_EPSILON * (p.magnitude + pole + p.half);
  const long double to_double = std::fabs(static_cast<long double>(z.value) - v);
  z.error_bound = static_cast<double>(p.next + rounding + to_double);
  return z;
}

}  // namespace qpc
