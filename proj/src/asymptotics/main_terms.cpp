#include <cmath>

#include "qpc/asymptotics.hpp"

namespace qpc {

namespace {

double zeta3() {
  static const double z = zeta(3.0).value;
  return z;
}

void require_log_positive(double B) {
  if (!(B > 1)) throw std::domain_error("main term needs B > 1");
}

}  // namespace

double s_main_term(double x, double y, const ResiduePolynomial& P) {
  if (!(x >= 10 && x <= y && y <= x * x * x)) {
    throw std::domain_error("s_main_term needs 10 <= x <= y <= x^3");
  }
  const double psi = std::log(x) - 0.25 * std::log(y);
  return x * y * (4 * P(psi) + 1.5 * P.derivative());
}

double t_main_term(double B, const ResiduePolynomial& P) {
  require_log_positive(B);
  return 0.4 * P.c1 * B * B * B * std::log(B);
}

double n_star_main_term(double B, const ResiduePolynomial& P, Variant v) {
  require_log_positive(B);
  return star_factor(v) * P.c1 * B * B * B * std::log(B);
}

double n_u_main_term(double B, const ResiduePolynomial& P, Variant v) {
  return n_star_main_term(B, P, v) / zeta3();
}

StarMainTerms n_star_main_terms(double B, const ResiduePolynomial& P) {
  return {n_star_main_term(B, P, Variant::paper), n_star_main_term(B, P, Variant::chain)};
}

std::string kind_name(CountKind k) {
  switch (k) {
    case CountKind::S: return "S";
    case CountKind::T: return "T";
    case CountKind::NStar: return "N_star";
    case CountKind::NU: return "N_u";
  }
  return "?";
}

CountKind parse_kind(const std::string& s) {
  if (s == "S") return CountKind::S;
  if (s == "T") return CountKind::T;
  if (s == "N_star") return CountKind::NStar;
  if (s == "N_u") return CountKind::NU;
  throw std::invalid_argument("unknown count kind: " + s);
}

MainTermModel main_term_model(CountKind kind, const ResiduePolynomial& P) {
  MainTermModel m;
  m.kind = kind;
  switch (kind) {
    case CountKind::S:
      m.constants = {{4 * P.c1, Provenance::paper_theorem}};
      break;
    case CountKind::T:
      m.constants = {{0.4 * P.c1, Provenance::paper_theorem}};
      break;
    case CountKind::NStar:
      m.constants = {{kPaperStarFactor * P.c1, Provenance::paper_theorem},
                     {kChainStarFactor * P.c1, Provenance::derivation_chain}};
      break;
    case CountKind::NU:
      m.constants = {{kPaperStarFactor * P.c1 / zeta3(), Provenance::paper_theorem},
                     {kChainStarFactor * P.c1 / zeta3(), Provenance::derivation_chain}};
      break;
  }
  return m;
}

}  // namespace qpc
