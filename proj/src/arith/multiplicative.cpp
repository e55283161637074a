#include <algorithm>
#include <cmath>

#include "qpc/arith.hpp"

namespace qpc {

FactoredInteger FactoredInteger::from_factors(std::vector<PrimePower> factors) {
  u128 v = 1;
  for (std::size_t i = 0; i < factors.size(); ++i) {
    const auto& f = factors[i];
    if (f.prime < 2 || f.exponent == 0 || (i > 0 && factors[i - 1].prime >= f.prime)) {
      throw std::invalid_argument("factor list must have increasing primes and positive exponents");
    }
    for (unsigned e = 0; e < f.exponent; ++e) v = checked_mul(v, f.prime);
  }
  FactoredInteger out;
  out.value_ = v;
  out.factors_ = std::move(factors);
  return out;
}

FactoredInteger FactoredInteger::pow(unsigned k) const {
  if (k == 0) return {};
  std::vector<PrimePower> f(factors_.begin(), factors_.end());
  for (auto& pp : f) pp.exponent *= k;
  return from_factors(std::move(f));
}

namespace {

// sum_{l | p^a, l != 0 mod 4} l
u128 r4_star_prime_power(u64 p, unsigned a) {
  if (p == 2) return 3;
  u128 sum = 1;
  u128 pk = 1;
  for (unsigned i = 0; i < a; ++i) {
    pk = checked_mul(pk, p);
    sum = checked_add(sum, pk);
  }
  return sum;
}

}  // namespace

u128 r4_star(const FactoredInteger& d) {
  u128 r = 1;
  for (const auto& [p, a] : d.factors()) r = checked_mul(r, r4_star_prime_power(p, a));
  return r;
}

mpz_class r4_star_exact(std::span<const PrimePower> factors) {
  mpz_class r = 1;
  for (const auto& [p, a] : factors) {
    if (a == 0) continue;
    if (p == 2) {
      r *= 3;
      continue;
    }
    // (p^{a+1} - 1) / (p - 1)
    mpz_class pa;
    mpz_ui_pow_ui(pa.get_mpz_t(), p, a + 1);
    r *= (pa - 1) / mpz_class(p - 1);
  }
  return r;
}

u128 r4(const FactoredInteger& d) { return checked_mul(8, r4_star(d)); }

int mobius(const FactoredInteger& n) {
  int sign = 1;
  for (const auto& pp : n.factors()) {
    if (pp.exponent >= 2) return 0;
    sign = -sign;
  }
  return sign;
}

std::vector<SquareDivisorPair> square_divisor_pairs(const FactoredInteger& n) {
  const auto f = n.factors();
  std::vector<unsigned> b(f.size(), 0);  // exponent of p_i in m, 0..2a_i
  std::vector<SquareDivisorPair> out;
  while (true) {
    u128 m = 1;
    std::vector<PrimePower> d;
    for (std::size_t i = 0; i < f.size(); ++i) {
      for (unsigned e = 0; e < b[i]; ++e) m = checked_mul(m, f[i].prime);
      const unsigned de = 4 * f[i].exponent - 2 * b[i];
      if (de > 0) d.push_back({f[i].prime, de});
    }
    out.push_back({m, FactoredInteger::from_factors(std::move(d))});

    std::size_t i = 0;
    while (i < f.size() && b[i] == 2 * f[i].exponent) b[i++] = 0;
    if (i == f.size()) break;
    ++b[i];
  }
  return out;
}

RationalBound::RationalBound(u128 numerator, u128 denominator) {
  if (denominator == 0) throw std::invalid_argument("RationalBound: zero denominator");
  u128 a = numerator, b = denominator;
  while (b != 0) {
    const u128 t = a % b;
    a = b;
    b = t;
  }
  num_ = numerator / a;
  den_ = denominator / a;
}

RationalBound RationalBound::divided_by(u128 k) const {
  if (k == 0) throw std::invalid_argument("RationalBound: division by zero");
  return RationalBound(num_, checked_mul(den_, k));
}

double RationalBound::to_double() const {
  return static_cast<double>(static_cast<long double>(num_) / static_cast<long double>(den_));
}

}  // namespace qpc
