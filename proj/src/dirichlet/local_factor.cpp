#include <stdexcept>
#include <string>

#include "qpc/dirichlet.hpp"

namespace qpc {

namespace {

void check_local_args(u64 p, int deg) {
  if (deg < 0 || deg > kMaxLocalDegree) {
    throw std::domain_error("local factor degree must be in [0, " +
                            std::to_string(kMaxLocalDegree) + "]");
  }
  if (factorize_trial(p).factors().size() != 1 || factorize_trial(p).factors()[0].exponent != 1) {
    throw std::domain_error("local factor needs a prime, got " + std::to_string(p));
  }
}

mpq_class pow_q(u64 p, unsigned e) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), p, e);
  return mpq_class(r);
}

// 1 - c x^i y^j z^k
LocalSeries one_minus(const mpq_class& c, Exponent e, Truncation t, std::array<char, 3> names) {
  return LocalSeries::constant(1, t, names) - LocalSeries::monomial(c, e, t, names);
}

}  // namespace

LocalSeries local_factor_definition(u64 p, int deg) {
  check_local_args(p, deg);
  const auto t = Truncation::in_first(deg);
  LocalSeries out(t, {'X', 'Y', '_'});
  for (int nu = 0; nu <= deg; ++nu) {
    for (int mu = 0; mu <= 2 * nu; ++mu) {
      const PrimePower pp{p, static_cast<unsigned>(2 * mu)};
      const mpz_class r = r4_star_exact(std::span<const PrimePower>(&pp, 1));
      out.add_term({nu, 2 * mu, 0}, mpq_class(r));
    }
  }
  return out;
}

LocalSeries local_factor_closed_form(u64 p, int deg) {
  check_local_args(p, deg);
  const auto t = Truncation::in_first(deg);
  const std::array<char, 3> names{'X', 'Y', '_'};

  // p^{-(s + 2jw - 2j)} = p^{2j} X Y^{2j}
  LocalSeries zetas = one_minus(1, {1, 0, 0}, t, names).inverse();
  zetas = zetas * one_minus(pow_q(p, 2), {1, 2, 0}, t, names).inverse();
  zetas = zetas * one_minus(pow_q(p, 4), {1, 4, 0}, t, names).inverse();

  LocalSeries g(t, names);
  if (p == 2) {
    g = LocalSeries::constant(1, t, names);
    g.add_term({1, 2, 0}, 3);
    g.add_term({1, 4, 0}, 2);
    g = g * one_minus(1, {1, 4, 0}, t, names).inverse();
    g = g * one_minus(4, {1, 2, 0}, t, names);
    g = g * one_minus(16, {1, 4, 0}, t, names);
  } else {
    const mpq_class q(static_cast<unsigned long>(p));
    g = LocalSeries::constant(1, t, names);
    g.add_term({1, 2, 0}, q * q + q + 1);
    g.add_term({1, 4, 0}, q * q * q + q * q + q);
    g.add_term({2, 6, 0}, q * q * q);
    g = g * one_minus(q * q, {1, 2, 0}, t, names);
    g = g * one_minus(1, {1, 4, 0}, t, names).inverse();
  }
  return zetas * g;
}

LocalSeries formal_identity_1_lhs(Truncation t) {
  LocalSeries out(t);
  const int cap = t.bounded() ? t.max_degree : 0;
  for (int nu = 0; nu <= cap; ++nu) {
    for (int mu = 0; mu <= 2 * nu; ++mu) {
      if (!t.keeps({nu, 2 * mu, 0})) break;
      for (int k = 0; k <= 2 * mu; ++k) out.add_term({nu, 2 * mu, k}, 1);
    }
  }
  return out;
}

LocalSeries formal_identity_1_rhs(Truncation t) {
  LocalSeries num = LocalSeries::constant(1, t);
  for (int k : {0, 1, 2}) num.add_term({1, 2, k}, 1);
  for (int k : {1, 2, 3}) num.add_term({1, 4, k}, 1);
  num.add_term({2, 6, 3}, 1);
  return num * one_minus(1, {1, 0, 0}, t, {'x', 'y', 'z'}).inverse() *
         one_minus(1, {1, 4, 0}, t, {'x', 'y', 'z'}).inverse() *
         one_minus(1, {1, 4, 4}, t, {'x', 'y', 'z'}).inverse();
}

LocalSeries formal_identity_2_lhs(Truncation t) {
  const std::array<char, 3> names{'x', 'y', 'a'};
  LocalSeries out = LocalSeries::constant(1, t, names);
  const int cap = t.bounded() ? t.max_degree : 0;
  for (int nu = 1; nu <= cap; ++nu) {
    out.add_term({nu, 0, 0}, 1);
    for (int mu = 1; mu <= 2 * nu; ++mu) out.add_term({nu, 2 * mu, 1}, 1);
  }
  return out;
}

LocalSeries formal_identity_2_rhs(Truncation t) {
  const std::array<char, 3> names{'x', 'y', 'a'};
  LocalSeries num = LocalSeries::constant(1, t, names);
  num.add_term({1, 2, 1}, 1);
  num.add_term({1, 4, 1}, 1);
  num.add_term({1, 4, 0}, -1);
  return num * one_minus(1, {1, 0, 0}, t, names).inverse() *
         one_minus(1, {1, 4, 0}, t, names).inverse();
}

IdentityReport formal_identity_1(int total_degree) {
  IdentityReport rep;
  const auto t = Truncation::total(total_degree);
  const auto lhs = formal_identity_1_lhs(t);
  rep.series_equal = lhs == formal_identity_1_rhs(t);
  rep.terms_compared = lhs.size();

  // Summing the geometric series in nu gives the left side as
  //   (1/(1-z)) { [1/(1-x) - y^2/(1-x y^4)] / (1-y^2)
  //             - z [1/(1-x) - y^2 z^2/(1-x y^4 z^4)] / (1-y^2 z^2) }
  // whose numerator over D_L = (1-z)(1-y^2)(1-y^2z^2)(1-x)(1-xy^4)(1-xy^4z^4)
  // is p_left below.  Cross-multiply against the right side N / D_R.
  const auto u = Truncation::none();
  auto mono = [&](long c, Exponent e) { return LocalSeries::monomial(c, e, u); };
  auto one = [&]() { return LocalSeries::constant(1, u); };
  const auto om_x = one() - mono(1, {1, 0, 0});
  const auto om_y2 = one() - mono(1, {0, 2, 0});
  const auto om_y2z2 = one() - mono(1, {0, 2, 2});
  const auto om_xy4 = one() - mono(1, {1, 4, 0});
  const auto om_xy4z4 = one() - mono(1, {1, 4, 4});
  const auto om_z = one() - mono(1, {0, 0, 1});

  const auto p_left = om_y2z2 * om_xy4z4 * (om_xy4 - mono(1, {0, 2, 0}) * om_x) -
                      mono(1, {0, 0, 1}) * om_y2 * om_xy4 * (om_xy4z4 - mono(1, {0, 2, 2}) * om_x);
  const auto d_left = om_z * om_y2 * om_y2z2 * om_x * om_xy4 * om_xy4z4;

  LocalSeries num = one();
  for (int k : {0, 1, 2}) num.add_term({1, 2, k}, 1);
  for (int k : {1, 2, 3}) num.add_term({1, 4, k}, 1);
  num.add_term({2, 6, 3}, 1);
  const auto d_right = om_x * om_xy4 * om_xy4z4;

  rep.polynomial_equal = p_left * d_right == num * d_left;
  return rep;
}

IdentityReport formal_identity_2(int total_degree) {
  IdentityReport rep;
  const auto t = Truncation::total(total_degree);
  const auto lhs = formal_identity_2_lhs(t);
  rep.series_equal = lhs == formal_identity_2_rhs(t);
  rep.terms_compared = lhs.size();

  // Left side summed in nu:
  //   1/(1-x) + a/(1-y^2) [x y^2/(1-x) - x y^6/(1-x y^4)]
  // over D_L = (1-y^2)(1-x)(1-x y^4).
  const auto u = Truncation::none();
  const std::array<char, 3> names{'x', 'y', 'a'};
  auto mono = [&](long c, Exponent e) { return LocalSeries::monomial(c, e, u, names); };
  auto one = [&]() { return LocalSeries::constant(1, u, names); };
  const auto om_x = one() - mono(1, {1, 0, 0});
  const auto om_y2 = one() - mono(1, {0, 2, 0});
  const auto om_xy4 = one() - mono(1, {1, 4, 0});

  const auto p_left = om_y2 * om_xy4 + mono(1, {1, 2, 1}) * om_xy4 - mono(1, {1, 6, 1}) * om_x;
  const auto d_left = om_y2 * om_x * om_xy4;

  LocalSeries num = one();
  num.add_term({1, 2, 1}, 1);
  num.add_term({1, 4, 1}, 1);
  num.add_term({1, 4, 0}, -1);
  const auto d_right = om_x * om_xy4;

  rep.polynomial_equal = p_left * d_right == num * d_left;
  return rep;
}

}  // namespace qpc
