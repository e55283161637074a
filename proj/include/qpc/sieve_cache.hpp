// On-disk cache for SpfSieve tables.
//
// Layout, all little-endian:
//   bytes 0..3   magic "SQ4C"
//   bytes 4..7   format version (uint32, currently 1)
//   bytes 8..15  limit (uint64)
//   then limit+1 uint32 smallest-prime-factor entries
#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "qpc/arith.hpp"

namespace qpc {

inline constexpr std::uint32_t kSieveCacheVersion = 1;

void save_sieve_cache(const SpfSieve& sieve, const std::filesystem::path& path);

// Returns the cached sieve when the file exists, the header is valid, the
// limit equals expected_limit, and the table passes validation.  On any
// mismatch returns nullopt and sets *why (if given) to a description.
std::optional<SpfSieve> load_sieve_cache(const std::filesystem::path& path, u64 expected_limit,
                                         std::string* why = nullptr);

}  // namespace qpc
