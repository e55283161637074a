// Exhaustive enumerations used as independent checks on the divisor-sum
// counts.  They know nothing about r4* or divisors of n^4.
#include <array>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "qpc/count.hpp"

namespace qpc {

namespace {

// r4[d] for 0 <= d <= top: convolution of the one-square counts.
std::vector<u64> brute_r4_table(u64 top) {
  std::vector<u64> r1(top + 1, 0);
  for (u64 y = 0; y * y <= top; ++y) r1[y * y] += (y == 0 ? 1 : 2);
  auto convolve = [top](const std::vector<u64>& a, const std::vector<u64>& b) {
    std::vector<u64> c(top + 1, 0);
    for (u64 i = 0; i <= top; ++i) {
      if (a[i] == 0) continue;
      for (u64 j = 0; i + j <= top; ++j) c[i + j] += a[i] * b[j];
    }
    return c;
  };
  const auto r2 = convolve(r1, r1);
  return convolve(r2, r2);
}

}  // namespace

u128 brute_force_star(u64 B) {
  if (B > kBruteStarCap) {
    throw std::domain_error("brute_force_star: B above cap " + std::to_string(kBruteStarCap));
  }
  if (B == 0) return 0;
  const u64 top = B * B;
  const auto r4 = brute_r4_table(top);
  u128 total = 0;
  for (u64 x = 1; x <= B; ++x) {
    const u64 x4 = x * x * x * x;
    for (u64 z = 1; z <= B; ++z) {
      const u64 z2 = z * z;
      if (x4 % z2 != 0) continue;
      const u64 d = x4 / z2;
      if (d >= 1 && d <= top) total += 4 * u128{r4[d]};  // signs of x and z
    }
  }
  return total;
}

u128 brute_force_primitive(u64 B) {
  if (B > kBrutePrimitiveCap) {
    throw std::domain_error("brute_force_primitive: B above cap " +
                            std::to_string(kBrutePrimitiveCap));
  }
  if (B == 0) return 0;
  const std::int64_t b = static_cast<std::int64_t>(B);
  const std::int64_t top = b * b;

  // Norms that occur as x^4/z^2 for some admissible (x, z).
  std::vector<bool> needed(top + 1, false);
  for (std::int64_t x = 1; x <= b; ++x) {
    for (std::int64_t z = 1; z <= b; ++z) {
      const std::int64_t x4 = x * x * x * x;
      if (x4 % (z * z) == 0 && x4 / (z * z) <= top) needed[x4 / (z * z)] = true;
    }
  }

  // Every y-vector in the ball with a needed norm, bucketed by norm.
  std::vector<std::vector<std::array<std::int64_t, 4>>> by_norm(top + 1);
  for (std::int64_t y1 = -b; y1 <= b; ++y1) {
    for (std::int64_t y2 = -b; y2 <= b; ++y2) {
      const std::int64_t s2 = y1 * y1 + y2 * y2;
      if (s2 > top) continue;
      for (std::int64_t y3 = -b; y3 <= b; ++y3) {
        const std::int64_t s3 = s2 + y3 * y3;
        if (s3 > top) continue;
        for (std::int64_t y4 = -b; y4 <= b; ++y4) {
          const std::int64_t s4 = s3 + y4 * y4;
          if (s4 >= 1 && s4 <= top && needed[s4]) by_norm[s4].push_back({y1, y2, y3, y4});
        }
      }
    }
  }

  u128 total = 0;
  for (std::int64_t x = -b; x <= b; ++x) {
    if (x == 0) continue;
    const std::int64_t x4 = x * x * x * x;
    for (std::int64_t z = -b; z <= b; ++z) {
      if (z == 0) continue;
      for (std::int64_t d = 1; d <= top; ++d) {
        if (d * z * z != x4) continue;
        for (const auto& y : by_norm[d]) {
          std::int64_t g = std::gcd(x, z);
          for (std::int64_t c : y) g = std::gcd(g, c);
          if (g == 1) ++total;
        }
      }
    }
  }
  return total;
}

}  // namespace qpc
