#include <limits>
#include <string>

#include "qpc/arith.hpp"

namespace qpc {

SpfSieve build_spf_sieve(u64 limit, std::size_t memory_budget) {
  if (limit < 2) {
    throw std::invalid_argument("sieve limit must be at least 2");
  }
  if (limit >= std::numeric_limits<std::uint32_t>::max()) {
    throw ResourceError("sieve limit does not fit 32-bit entries");
  }
  const std::size_t bytes = (limit + 1) * sizeof(std::uint32_t);
  if (bytes > memory_budget) {
    throw ResourceError("sieve of limit " + std::to_string(limit) + " needs " +
                        std::to_string(bytes) + " bytes, budget is " +
                        std::to_string(memory_budget));
  }

  SpfSieve s;
  s.spf_.assign(limit + 1, 0);
  std::vector<std::uint32_t> primes;
  for (u64 i = 2; i <= limit; ++i) {
    if (s.spf_[i] == 0) {
      s.spf_[i] = static_cast<std::uint32_t>(i);
      primes.push_back(static_cast<std::uint32_t>(i));
    }
    const std::uint32_t pi = s.spf_[i];
    for (std::uint32_t p : primes) {
      if (p > pi || u64{p} * i > limit) break;
      s.spf_[u64{p} * i] = p;
    }
  }
  return s;
}

SpfSieve sieve_from_table(std::vector<std::uint32_t> table) {
  if (table.size() < 3) {
    throw std::invalid_argument("sieve table too short");
  }
  const u64 limit = table.size() - 1;
  for (u64 i = 2; i <= limit; ++i) {
    const u64 p = table[i];
    if (p < 2 || i % p != 0 || table[p] != p) {
      throw std::invalid_argument("invalid spf entry at " + std::to_string(i));
    }
    if (p != i && table[i / p] < p) {
      throw std::invalid_argument("spf entry at " + std::to_string(i) + " is not smallest");
    }
  }
  table[0] = 0;
  table[1] = 0;
  SpfSieve s;
  s.spf_ = std::move(table);
  return s;
}

std::vector<u64> SpfSieve::primes_up_to(u64 bound) const {
  std::vector<u64> out;
  const u64 top = bound < limit() ? bound : limit();
  for (u64 i = 2; i <= top; ++i) {
    if (spf_[i] == i) out.push_back(i);
  }
  return out;
}

FactoredInteger factorize(u64 n, const SpfSieve& sieve) {
  if (n == 0 || n > sieve.limit()) {
    throw std::out_of_range("factorize: " + std::to_string(n) + " outside [1, " +
                            std::to_string(sieve.limit()) + "]");
  }
  std::vector<PrimePower> f;
  while (n > 1) {
    const u64 p = sieve.spf(n);
    unsigned e = 0;
    do {
      n /= p;
      ++e;
    } while (n % p == 0);
    f.push_back({p, e});
  }
  return FactoredInteger::from_factors(std::move(f));
}

FactoredInteger factorize_trial(u64 n) {
  if (n == 0) throw std::out_of_range("factorize_trial: 0");
  std::vector<PrimePower> f;
  for (u64 p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
    if (n % p != 0) continue;
    unsigned e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    f.push_back({p, e});
  }
  if (n > 1) f.push_back({n, 1});
  return FactoredInteger::from_factors(std::move(f));
}

std::vector<std::int8_t> mobius_table(const SpfSieve& sieve, u64 limit) {
  if (limit > sieve.limit()) {
    throw ResourceError("mobius table limit " + std::to_string(limit) + " exceeds sieve limit");
  }
  std::vector<std::int8_t> mu(limit + 1, 0);
  if (limit >= 1) mu[1] = 1;
  for (u64 i = 2; i <= limit; ++i) {
    const u64 p = sieve.spf(i);
    const u64 q = i / p;
    mu[i] = (q % p == 0) ? 0 : static_cast<std::int8_t>(-mu[q]);
  }
  return mu;
}

std::vector<std::int32_t> mertens_table(const SpfSieve& sieve, u64 limit) {
  const auto mu = mobius_table(sieve, limit);
  std::vector<std::int32_t> m(limit + 1, 0);
  for (u64 i = 1; i <= limit; ++i) m[i] = m[i - 1] + mu[i];
  return m;
}

}  // namespace qpc
