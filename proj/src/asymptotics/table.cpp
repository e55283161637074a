#include <chrono>
#include <cmath>

#include "qpc/asymptotics.hpp"

namespace qpc {

std::vector<CountRecord> convergence_table(const SpfSieve& sieve, CountKind kind,
                                           std::span<const u64> bounds, const ResiduePolynomial& P,
                                           Variant v, const ParallelOptions& opts) {
  for (std::size_t i = 1; i < bounds.size(); ++i) {
    if (bounds[i] < bounds[i - 1]) throw std::invalid_argument("bounds must be ascending");
  }
  std::vector<CountRecord> out;
  out.reserve(bounds.size());
  for (u64 B : bounds) {
    CountRecord r;
    r.kind = kind_name(kind);
    r.bound = B;
    const auto start = std::chrono::steady_clock::now();
    const double b = static_cast<double>(B);
    switch (kind) {
      case CountKind::S:
        r.exact_count = s_exact(sieve, B, RationalBound::integer(u128{B} * B), opts);
        if (B >= 10) r.predicted_main = s_main_term(b, b * b, P);
        break;
      case CountKind::T:
        r.exact_count = t_exact(sieve, B, opts);
        if (B >= 10) r.predicted_main = t_main_term(b, P);
        break;
      case CountKind::NStar:
        r.exact_count = n_star(sieve, RationalBound::integer(B), opts);
        if (B >= 10) r.predicted_main = n_star_main_term(b, P, v);
        break;
      case CountKind::NU:
        r.exact_count = n_u(sieve, RationalBound::integer(B), opts);
        if (B >= 10) r.predicted_main = n_u_main_term(b, P, v);
        break;
    }
    r.elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (r.predicted_main && *r.predicted_main > 0) {
      r.ratio = static_cast<double>(r.exact_count) / *r.predicted_main;
    }
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<DiscrepancyRow> constant_discrepancy(const SpfSieve& sieve, std::span<const u64> bounds,
                                                 const ResiduePolynomial& P,
                                                 const ParallelOptions& opts) {
  std::vector<DiscrepancyRow> rows;
  for (u64 B : bounds) {
    if (B < 2) throw std::domain_error("constant_discrepancy needs B >= 2");
    DiscrepancyRow r;
    r.B = B;
    r.n_star = n_star(sieve, RationalBound::integer(B), opts);
    const double b = static_cast<double>(B);
    r.empirical = static_cast<double>(r.n_star) / (P.c1 * b * b * b * std::log(b));
    rows.push_back(r);
  }
  return rows;
}

}  // namespace qpc
