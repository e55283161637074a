// 128-bit integer helpers shared by every counting path.
//
// Counts such as N*(10^7) are around 10^22, past the range of 64-bit words,
// so every accumulator in the library is a 128-bit integer.  Overflow is
// never allowed to wrap: the checked helpers throw std::overflow_error.
#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace qpc {

using u64 = std::uint64_t;
using u128 = unsigned __int128;
using i128 = __int128;

inline u128 checked_mul(u128 a, u128 b) {
  u128 r;
  if (__builtin_mul_overflow(a, b, &r)) {
    throw std::overflow_error("128-bit multiplication overflow");
  }
  return r;
}

inline u128 checked_add(u128 a, u128 b) {
  u128 r;
  if (__builtin_add_overflow(a, b, &r)) {
    throw std::overflow_error("128-bit addition overflow");
  }
  return r;
}

inline i128 checked_add(i128 a, i128 b) {
  i128 r;
  if (__builtin_add_overflow(a, b, &r)) {
    throw std::overflow_error("128-bit addition overflow");
  }
  return r;
}

inline i128 checked_mul(i128 a, i128 b) {
  i128 r;
  if (__builtin_mul_overflow(a, b, &r)) {
    throw std::overflow_error("128-bit multiplication overflow");
  }
  return r;
}

// a*b <= c without overflow; a product that does not fit is larger than c.
inline bool product_le(u128 a, u128 b, u128 c) {
  u128 r;
  if (__builtin_mul_overflow(a, b, &r)) return false;
  return r <= c;
}

inline std::string to_string(u128 v) {
  if (v == 0) return "0";
  std::string s;
  while (v != 0) {
    s.push_back(static_cast<char>('0' + static_cast<int>(v % 10)));
    v /= 10;
  }
  return {s.rbegin(), s.rend()};
}

inline std::string to_string(i128 v) {
  if (v < 0) {
    // -(v+1)+1 avoids negating the minimum value.
    return "-" + to_string(static_cast<u128>(-(v + 1)) + 1);
  }
  return to_string(static_cast<u128>(v));
}

// Floor of the square root for the full unsigned 128-bit range.
inline u128 isqrt(u128 n) {
  if (n < 2) return n;
  u128 lo = 1;
  u128 hi = u128{1} << 64;
  while (lo < hi) {
    u128 mid = lo + (hi - lo + 1) / 2;
    if (mid <= n / mid) {
      lo = mid;
    } else {
      hi = mid - 1;
    }
  }
  return lo;
}

}  // namespace qpc
