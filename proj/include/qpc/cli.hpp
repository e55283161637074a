// Command-line surface of the `qpc` tool.
//
//   qpc count    --kind {star,primitive} --B N [--projective]
//   qpc table    --kind {S,T,N_star,N_u} --bounds a,b,c [--variant {paper,chain}]
//   qpc verify   --suite {local,formal,global,partition,oracle,telescope}
//   qpc constant [--bounds a,b,c]
//
// Global flags: --format {csv,json} --threads N --sieve-limit N
// --prime-limit N --cache PATH --tolerance X --no-timing.  QPC_THREADS sets
// the default thread count.
//
// Exit codes: 0 success, 1 invalid arguments, 2 resource error,
// 3 failed verification check.
#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qpc/asymptotics.hpp"

namespace qpc::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitResource = 2;
inline constexpr int kExitCheckFailed = 3;

enum class Format { csv, json };

struct RunConfig {
  u64 sieve_limit = kDefaultSieveLimit;
  int threads = 1;
  Format format = Format::csv;
  std::optional<std::filesystem::path> cache_path;
  u64 prime_limit = 1'000'000;
  double tolerance = 1e-8;
  bool timing = true;

  // threads from QPC_THREADS if set, else the number of logical cores.
  static int default_threads();
};

// Parses "a,b,c" into ascending-order-preserving integers; throws
// std::invalid_argument on malformed input.  The empty string is the
// empty list.
std::vector<u64> parse_bounds(const std::string& text);

// 17 significant digits, the form used for every real in the output.
std::string format_real(double v);

// JSON helpers: a quoted string, a real in the same 17-digit form (null when
// absent or non-finite), and an array of flat objects whose values are
// already JSON text, one object per line.
using JsonRow = std::vector<std::pair<std::string, std::string>>;
std::string json_string(const std::string& s);
std::string json_real(std::optional<double> v);
void write_json_rows(std::ostream& out, const std::vector<JsonRow>& rows);

void write_records(std::ostream& out, const std::vector<CountRecord>& records, Format f, bool timing);

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

void write_checks(std::ostream& out, const std::string& suite, const std::vector<CheckResult>& checks,
                  Format f);

// Runs the named verification suite; throws std::invalid_argument for an
// unknown suite name.
std::vector<CheckResult> run_suite(const std::string& suite, const RunConfig& cfg);

// Entry point shared by the executable and the tests.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace qpc::cli
