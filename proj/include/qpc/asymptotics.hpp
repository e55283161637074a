// Leading constant, residue polynomial, and main terms for S, T, N*, N_u,
// plus convergence tables that set exact counts against the predictions.
#pragma once

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "qpc/count.hpp"
#include "qpc/dirichlet.hpp"

namespace qpc {

// Numerical differentiation did not settle; what() carries the estimates.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Dusart's bounds on pi(x) used for the tail hold from here on; below it
// the product is returned untouched with a crude bound.
inline constexpr u64 kTailCorrectionFrom = 599;

// (23/150) zeta(5) prod_{p <= prime_limit} (1 + 1/p + 2/p^2 + 2/p^3 + 1/p^4 + 1/p^5)(1 - 1/p).
// For prime_limit >= kTailCorrectionFrom the missing primes are accounted
// for with a prime-counting estimate; tail_bound certifies |C4 - value|.
EulerValue euler_product_C4(u64 prime_limit);

struct ResiduePolynomial {
  double c1 = 0;
  double c0 = 0;
  double c1_error = 0;
  double c0_error = 0;

  double operator()(double t) const { return c1 * t + c0; }
  double derivative() const { return c1; }
};

// h(s) = 16 (s-1)^2 zeta(s) zeta((s+1)/2) G(s, (5-s)/4) / ((5-s)(9-s) s (s+1)),
// evaluated with (s-1) zeta(s) in its pole-free form.
double residue_kernel(double s, std::span<const u64> primes, u64 prime_limit);

struct DerivativeDiagnostics {
  double d_coarse = 0;  // central difference, step 1e-3
  double d_fine = 0;    // central difference, step 1e-4
  double richardson = 0;
  double richardson_alt = 0;  // same with steps 2e-3 / 2e-4
};

// P(t) = c1 t + c0 with c1 = h(1), c0 = h'(1).  prime_limit >= 1000.
// Throws NumericalError when the derivative estimates disagree beyond a
// relative 1e-5.
ResiduePolynomial p_coefficients(u64 prime_limit, DerivativeDiagnostics* diag = nullptr);

enum class Variant { paper, chain };

// The N* constants are these numerators over kStarFactorDenominator.
inline constexpr int kPaperStarNumerator = 192;
inline constexpr int kChainStarNumerator = 256;
inline constexpr int kStarFactorDenominator = 5;

inline constexpr double kPaperStarFactor = double{kPaperStarNumerator} / kStarFactorDenominator;
inline constexpr double kChainStarFactor = double{kChainStarNumerator} / kStarFactorDenominator;

inline double star_factor(Variant v) {
  return v == Variant::paper ? kPaperStarFactor : kChainStarFactor;
}

// x y (4 P(psi) + (3/2) P'(psi)), psi = log x - log(y)/4.
// Requires 10 <= x <= y <= x^3; throws std::domain_error otherwise.
double s_main_term(double x, double y, const ResiduePolynomial& P);

// (2/5) c1 B^3 log B.  Requires B > 1.
double t_main_term(double B, const ResiduePolynomial& P);

// factor * c1 B^3 log B, factor 192/5 (paper) or 256/5 (chain).  Requires B > 1.
double n_star_main_term(double B, const ResiduePolynomial& P, Variant v);

// n_star_main_term / zeta(3).
double n_u_main_term(double B, const ResiduePolynomial& P, Variant v);

struct StarMainTerms {
  double paper = 0;
  double chain = 0;
};
StarMainTerms n_star_main_terms(double B, const ResiduePolynomial& P);

enum class CountKind { S, T, NStar, NU };

std::string kind_name(CountKind k);
CountKind parse_kind(const std::string& s);  // "S", "T", "N_star", "N_u"

enum class Provenance { paper_theorem, derivation_chain };

struct LabeledConstant {
  double value = 0;
  Provenance provenance = Provenance::paper_theorem;
};

struct MainTermModel {
  CountKind kind = CountKind::S;
  std::vector<LabeledConstant> constants;  // multiples of B^3 log B (S: of x y psi)
};

MainTermModel main_term_model(CountKind kind, const ResiduePolynomial& P);

// One record per bound, in the given order.  Bounds must be ascending.
// Kind S is evaluated at (x, y) = (B, B^2).  Predictions are absent below
// B = 10, outside the range of the main terms.
std::vector<CountRecord> convergence_table(const SpfSieve& sieve, CountKind kind,
                                           std::span<const u64> bounds, const ResiduePolynomial& P,
                                           Variant v, const ParallelOptions& opts = {});

struct DiscrepancyRow {
  u64 B = 0;
  u128 n_star = 0;
  double empirical = 0;  // n_star / (C4 B^3 log B)
  double paper_factor = kPaperStarFactor;
  double chain_factor = kChainStarFactor;
};

std::vector<DiscrepancyRow> constant_discrepancy(const SpfSieve& sieve, std::span<const u64> bounds,
                                                 const ResiduePolynomial& P,
                                                 const ParallelOptions& opts = {});

}  // namespace qpc
