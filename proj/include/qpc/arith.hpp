// Sieve, factorization, and the multiplicative functions consumed by the
// counting identities: r4*, r4, the Moebius function, and the
// square-cofactor divisor pairs of n^4.
#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "qpc/wide.hpp"

namespace qpc {

// Thrown when a request exceeds the configured memory budget or the
// range covered by a sieve.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct PrimePower {
  u64 prime;
  unsigned exponent;

  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

// A positive integer together with its prime factorization.  Primes are
// strictly increasing, exponents are at least one, and the empty list
// stands for 1.
class FactoredInteger {
 public:
  FactoredInteger() = default;

  // Validates ordering and recomputes the value; throws std::overflow_error
  // if the value does not fit in 128 bits.
  static FactoredInteger from_factors(std::vector<PrimePower> factors);

  u128 value() const { return value_; }
  std::span<const PrimePower> factors() const { return factors_; }
  bool is_one() const { return factors_.empty(); }

  // Every exponent multiplied by k (n -> n^k).
  FactoredInteger pow(unsigned k) const;

  friend bool operator==(const FactoredInteger&, const FactoredInteger&) = default;

 private:
  u128 value_ = 1;
  std::vector<PrimePower> factors_;
};

inline constexpr std::size_t kDefaultSieveLimit = 10'000'000;
inline constexpr std::size_t kDefaultMemoryBudget = std::size_t{1} << 32;  // 4 GiB

// Smallest-prime-factor table on [0, limit].  Immutable once built, so one
// instance is shared read-only by every worker.
class SpfSieve {
 public:
  SpfSieve() = default;

  u64 limit() const { return spf_.empty() ? 0 : spf_.size() - 1; }
  std::uint32_t spf(u64 i) const { return spf_[i]; }
  bool is_prime(u64 i) const { return i >= 2 && i <= limit() && spf_[i] == i; }
  std::span<const std::uint32_t> table() const { return spf_; }

  // Primes up to min(bound, limit), ascending.
  std::vector<u64> primes_up_to(u64 bound) const;

 private:
  friend SpfSieve build_spf_sieve(u64 limit, std::size_t memory_budget);
  friend SpfSieve sieve_from_table(std::vector<std::uint32_t> table);

  std::vector<std::uint32_t> spf_;
};

// Linear sieve.  Requires limit >= 2; throws ResourceError when
// 4*(limit+1) bytes exceeds the budget or limit does not fit 32-bit entries.
SpfSieve build_spf_sieve(u64 limit, std::size_t memory_budget = kDefaultMemoryBudget);

// Adopts a table read from a cache file; throws std::invalid_argument if the
// table is not a valid smallest-prime-factor table.
SpfSieve sieve_from_table(std::vector<std::uint32_t> table);

// Throws std::out_of_range for n == 0 or n > sieve.limit().
FactoredInteger factorize(u64 n, const SpfSieve& sieve);

// Trial-division factorization, independent of any sieve.  Used by the
// oracles and by callers holding values above the sieve limit.
FactoredInteger factorize_trial(u64 n);

// Sum of the divisors l of d with l != 0 mod 4, from the multiplicative
// form: sigma(p^a) for odd p, 3 for 2^a with a >= 1.
u128 r4_star(const FactoredInteger& d);

// Same function on an arbitrary exponent list, in arbitrary precision.
mpz_class r4_star_exact(std::span<const PrimePower> factors);

// Number of representations of d as an ordered sum of four squares.
u128 r4(const FactoredInteger& d);

int mobius(const FactoredInteger& n);

// Moebius values on [0, limit] (entry 0 unused), from the sieve.
std::vector<std::int8_t> mobius_table(const SpfSieve& sieve, u64 limit);

// Prefix sums M(k) = sum_{j<=k} mu(j) on [0, limit].
std::vector<std::int32_t> mertens_table(const SpfSieve& sieve, u64 limit);

struct SquareDivisorPair {
  u128 m;             // divisor of n^2
  FactoredInteger d;  // n^4 / m^2

  friend bool operator==(const SquareDivisorPair&, const SquareDivisorPair&) = default;
};

// The divisors d of n^4 whose cofactor n^4/d is a perfect square, written
// as d = n^4/m^2 for m | n^2.  Yields tau(n^2) pairs with m in mixed-radix
// order of the factor exponents (first prime fastest).
std::vector<SquareDivisorPair> square_divisor_pairs(const FactoredInteger& n);

// Exact non-negative rational bound num/den in lowest terms.  Comparisons
// against integers are done by cross multiplication.
class RationalBound {
 public:
  RationalBound(u128 numerator = 0, u128 denominator = 1);

  static RationalBound integer(u128 v) { return RationalBound(v, 1); }

  u128 numerator() const { return num_; }
  u128 denominator() const { return den_; }

  // m <= num/den.
  bool admits(u128 m) const { return product_le(m, den_, num_); }
  u128 floor() const { return num_ / den_; }
  bool below_one() const { return num_ < den_; }

  // This bound divided by a positive integer k.
  RationalBound divided_by(u128 k) const;

  double to_double() const;

  friend bool operator==(const RationalBound&, const RationalBound&) = default;

 private:
  u128 num_;
  u128 den_;
};

}  // namespace qpc
