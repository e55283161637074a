#include <array>
#include <cstring>
#include <fstream>

#include "qpc/sieve_cache.hpp"

namespace qpc {

namespace {

constexpr std::array<char, 4> kMagic = {'S', 'Q', '4', 'C'};

template <typename T>
void put_le(std::ostream& os, T v) {
  std::array<char, sizeof(T)> buf;
  for (std::size_t i = 0; i < sizeof(T); ++i) {
    buf[i] = static_cast<char>((v >> (8 * i)) & 0xff);
  }
  os.write(buf.data(), buf.size());
}

template <typename T>
bool get_le(std::istream& is, T& v) {
  std::array<unsigned char, sizeof(T)> buf;
  if (!is.read(reinterpret_cast<char*>(buf.data()), buf.size())) return false;
  v = 0;
  for (std::size_t i = 0; i < sizeof(T); ++i) v |= static_cast<T>(buf[i]) << (8 * i);
  return true;
}

}  // namespace

void save_sieve_cache(const SpfSieve& sieve, const std::filesystem::path& path) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw std::runtime_error("cannot open sieve cache for writing: " + path.string());
  os.write(kMagic.data(), kMagic.size());
  put_le<std::uint32_t>(os, kSieveCacheVersion);
  put_le<std::uint64_t>(os, sieve.limit());
  for (std::uint32_t e : sieve.table()) put_le<std::uint32_t>(os, e);
  if (!os) throw std::runtime_error("failed writing sieve cache: " + path.string());
}

std::optional<SpfSieve> load_sieve_cache(const std::filesystem::path& path, u64 expected_limit,
                                         std::string* why) {
  auto fail = [&](std::string msg) -> std::optional<SpfSieve> {
    if (why) *why = std::move(msg);
    return std::nullopt;
  };
  std::ifstream is(path, std::ios::binary);
  if (!is) return fail("cannot open " + path.string());

  std::array<char, 4> magic;
  if (!is.read(magic.data(), magic.size()) || magic != kMagic) return fail("bad magic");
  std::uint32_t version = 0;
  if (!get_le(is, version) || version != kSieveCacheVersion) return fail("unsupported version");
  std::uint64_t limit = 0;
  if (!get_le(is, limit)) return fail("truncated header");
  if (limit != expected_limit) {
    return fail("limit " + std::to_string(limit) + " != expected " +
                std::to_string(expected_limit));
  }

  std::vector<std::uint32_t> table(limit + 1);
  for (auto& e : table) {
    if (!get_le(is, e)) return fail("truncated table");
  }
  if (is.peek() != std::char_traits<char>::eof()) return fail("trailing bytes");
  try {
    return sieve_from_table(std::move(table));
  } catch (const std::invalid_argument& e) {
    return fail(e.what());
  }
}

}  // namespace qpc
