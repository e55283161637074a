#include <algorithm>
#include <chrono>
#include <cmath>
#include <exception>
#include <ostream>
#include <random>
#include <sstream>

#include <omp.h>

#include <CLI11.hpp>

#include "qpc/cli.hpp"
#include "qpc/sieve_cache.hpp"

namespace qpc::cli {

namespace {

// Largest bound any verification suite touches.
constexpr u64 kVerifySieve = 10'000;

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

ParallelOptions parallel(const RunConfig& cfg) {
  ParallelOptions o;
  o.threads = cfg.threads;
  return o;
}

// Without a cache the sieve is only as large as the command needs; with one
// it always spans sieve_limit so that one file serves every command.
SpfSieve obtain_sieve(const RunConfig& cfg, u64 needed, std::ostream& err) {
  if (needed > cfg.sieve_limit) {
    throw ResourceError("bound " + std::to_string(needed) + " exceeds --sieve-limit " +
                        std::to_string(cfg.sieve_limit));
  }
  if (!cfg.cache_path) return build_spf_sieve(std::max<u64>(needed, 2));

  const u64 limit = std::max<u64>(cfg.sieve_limit, 2);
  std::string why;
  if (auto cached = load_sieve_cache(*cfg.cache_path, limit, &why)) return std::move(*cached);
  if (std::filesystem::exists(*cfg.cache_path)) {
    err << "warning: ignoring sieve cache " << cfg.cache_path->string() << ": " << why << "; rebuilding\n";
  }
  SpfSieve sieve = build_spf_sieve(limit);
  save_sieve_cache(sieve, *cfg.cache_path);
  return sieve;
}

ResiduePolynomial residue_polynomial(const RunConfig& cfg) {
  return p_coefficients(std::max<u64>(cfg.prime_limit, 1000));
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string fraction(std::size_t passed, std::size_t total) {
  return std::to_string(passed) + "/" + std::to_string(total);
}

// ---------------------------------------------------------------- suites

std::vector<CheckResult> suite_local() {
  std::vector<CheckResult> out;
  const auto primes = primes_up_to(100);
  std::size_t ok = 0;
  std::string failed;
  for (u64 p : primes) {
    if (local_factor_definition(p, 30) == local_factor_closed_form(p, 30)) {
      ++ok;
    } else {
      failed += (failed.empty() ? " failed p=" : ",") + std::to_string(p);
    }
  }
  out.push_back({"local_factor_closed_form", ok == primes.size(),
                 "primes<=100 degree=30 equal=" + fraction(ok, primes.size()) + failed});
  return out;
}

std::vector<CheckResult> suite_formal() {
  std::vector<CheckResult> out;
  auto report = [&](const std::string& name, const IdentityReport& r) {
    out.push_back({name, static_cast<bool>(r),
                   std::string("series=") + (r.series_equal ? "equal" : "differ") +
                       " polynomial=" + (r.polynomial_equal ? "equal" : "differ") +
                       " terms=" + std::to_string(r.terms_compared)});
  };
  report("formal_identity_1", formal_identity_1());
  report("formal_identity_2", formal_identity_2());
  return out;
}

std::vector<CheckResult> suite_global(const SpfSieve& sieve, const RunConfig& cfg) {
  std::vector<CheckResult> out;
  for (const auto& [s, w] : {std::pair{6.0, 2.0}, std::pair{7.0, 3.0}}) {
    const double residual = global_series_check(sieve, s, w, kVerifySieve, cfg.prime_limit);
    std::ostringstream name;
    name << "global_series(s=" << s << ";w=" << w << ")";
    out.push_back({name.str(), residual < cfg.tolerance,
                   "residual=" + format_real(residual) + " tolerance=" + format_real(cfg.tolerance)});
  }
  return out;
}

std::vector<CheckResult> suite_partition(const SpfSieve& sieve, const RunConfig& cfg) {
  std::mt19937_64 rng(20240917);
  std::uniform_int_distribution<u64> pick(1, kVerifySieve);
  std::vector<u64> bounds(200);
  for (auto& b : bounds) b = pick(rng);
  std::sort(bounds.begin(), bounds.end());
  std::size_t ok = 0;
  std::string failed;
  for (u64 B : bounds) {
    if (partition_witness(sieve, B, parallel(cfg)).consistent()) {
      ++ok;
    } else if (failed.empty()) {
      failed = " first_failure=" + std::to_string(B);
    }
  }
  return {{"partition_identity", ok == bounds.size(),
           "sampled B<=" + std::to_string(kVerifySieve) + " consistent=" + fraction(ok, bounds.size()) + failed}};
}

std::vector<CheckResult> suite_oracle(const SpfSieve& sieve, const RunConfig& cfg) {
  std::size_t star_ok = 0, prim_ok = 0;
  std::string star_failed, prim_failed;
  const u64 top = kBrutePrimitiveCap;
  for (u64 B = 0; B <= top; ++B) {
    const auto bound = RationalBound::integer(B);
    if (n_star(sieve, bound, parallel(cfg)) == brute_force_star(B)) {
      ++star_ok;
    } else if (star_failed.empty()) {
      star_failed = " first_failure=" + std::to_string(B);
    }
    if (n_u(sieve, bound, parallel(cfg)) == brute_force_primitive(B)) {
      ++prim_ok;
    } else if (prim_failed.empty()) {
      prim_failed = " first_failure=" + std::to_string(B);
    }
  }
  const std::string range = "B=0.." + std::to_string(top) + " equal=";
  return {{"n_star_vs_brute_force", star_ok == top + 1, range + fraction(star_ok, top + 1) + star_failed},
          {"n_u_vs_brute_force", prim_ok == top + 1, range + fraction(prim_ok, top + 1) + prim_failed}};
}

std::vector<CheckResult> suite_telescope(const SpfSieve& sieve, const RunConfig& cfg) {
  std::vector<CheckResult> out;
  for (u64 B : {u64{100}, u64{1000}, u64{10000}}) {
    const TelescopeReport r = telescoping_check(sieve, B, parallel(cfg));
    const std::string at = "(B=" + std::to_string(B) + ")";
    out.push_back({"telescope_lower" + at, r.lower_ok,
                   "k0=" + std::to_string(r.k0) + " T=" + to_string(r.t_value) +
                       " lower_sum=" + to_string(r.below.lower_sum) + "/" + to_string(r.above.lower_sum)});
    out.push_back({"telescope_partition" + at, r.partition_ok,
                   "witnessed_c=" + format_real(std::max(r.below.witnessed_c, r.above.witnessed_c))});
  }
  return out;
}

// ---------------------------------------------------------------- commands

struct Options {
  RunConfig cfg;
  std::string format = "csv";
  std::string kind;
  std::string variant = "chain";
  std::string bounds;
  std::string suite;
  u64 B = 0;
  bool projective = false;
};

Variant parse_variant(const std::string& v) { return v == "paper" ? Variant::paper : Variant::chain; }

int cmd_count(const Options& o, std::ostream& out, std::ostream& err) {
  const SpfSieve sieve = obtain_sieve(o.cfg, o.B, err);
  const bool star = o.kind == "star";
  const auto start = std::chrono::steady_clock::now();
  CountRecord r;
  r.bound = o.B;
  const auto bound = RationalBound::integer(o.B);
  if (star) {
    r.kind = kind_name(CountKind::NStar);
    r.exact_count = n_star(sieve, bound, parallel(o.cfg));
  } else {
    r.kind = o.projective ? "N_u_projective" : kind_name(CountKind::NU);
    r.exact_count = n_u(sieve, bound, parallel(o.cfg));
    if (o.projective) r.exact_count /= 2;
  }
  r.elapsed = seconds_since(start);
  if (o.B >= 10) {
    const ResiduePolynomial P = residue_polynomial(o.cfg);
    const double b = static_cast<double>(o.B);
    const Variant v = parse_variant(o.variant);
    double pred = star ? n_star_main_term(b, P, v) : n_u_main_term(b, P, v);
    if (!star && o.projective) pred /= 2;
    r.predicted_main = pred;
    r.ratio = static_cast<double>(r.exact_count) / pred;
  }
  write_records(out, {r}, o.cfg.format, o.cfg.timing);
  return kExitOk;
}

int cmd_table(const Options& o, std::ostream& out, std::ostream& err) {
  const CountKind kind = parse_kind(o.kind);
  const std::vector<u64> bounds = parse_bounds(o.bounds);
  if (!std::is_sorted(bounds.begin(), bounds.end())) throw UsageError("--bounds must be ascending");
  const u64 top = bounds.empty() ? 2 : bounds.back();
  const SpfSieve sieve = obtain_sieve(o.cfg, top, err);
  ResiduePolynomial P;
  if (top >= 10) P = residue_polynomial(o.cfg);
  const auto rows = convergence_table(sieve, kind, bounds, P, parse_variant(o.variant), parallel(o.cfg));
  write_records(out, rows, o.cfg.format, o.cfg.timing);
  return kExitOk;
}

int cmd_verify(const Options& o, std::ostream& out, std::ostream& err) {
  RunConfig cfg = o.cfg;
  std::vector<CheckResult> checks;
  if (o.suite == "local" || o.suite == "formal") {
    checks = run_suite(o.suite, cfg);
  } else {
    // The sieve is only needed up to kVerifySieve; reuse the cache when given.
    if (cfg.cache_path && cfg.sieve_limit < kVerifySieve) cfg.cache_path.reset();
    if (!cfg.cache_path) cfg.sieve_limit = std::max(cfg.sieve_limit, kVerifySieve);
    const SpfSieve sieve = obtain_sieve(cfg, kVerifySieve, err);
    if (o.suite == "global") checks = suite_global(sieve, cfg);
    else if (o.suite == "partition") checks = suite_partition(sieve, cfg);
    else if (o.suite == "oracle") checks = suite_oracle(sieve, cfg);
    else if (o.suite == "telescope") checks = suite_telescope(sieve, cfg);
    else throw UsageError("unknown suite '" + o.suite + "'");
  }
  write_checks(out, o.suite, checks, cfg.format);
  bool all = true;
  for (const auto& c : checks) {
    if (!c.passed) {
      err << "check failed: " << o.suite << "/" << c.name << "\n";
      all = false;
    }
  }
  return all ? kExitOk : kExitCheckFailed;
}

struct ConstantRow {
  std::string quantity;
  std::optional<u64> bound;
  std::string value;  // decimal text: a 17-digit real or an exact count
  bool exact = false;
  std::optional<double> error;
};

int cmd_constant(const Options& o, std::ostream& out, std::ostream& err) {
  if (o.cfg.prime_limit < 2) throw UsageError("constant needs --prime-limit >= 2");
  const std::vector<u64> bounds = parse_bounds(o.bounds);
  if (!std::is_sorted(bounds.begin(), bounds.end())) throw UsageError("--bounds must be ascending");
  for (u64 B : bounds) {
    if (B < 2) throw UsageError("constant --bounds entries must be at least 2");
  }

  const EulerValue c4 = euler_product_C4(o.cfg.prime_limit);
  const ResiduePolynomial P = residue_polynomial(o.cfg);
  const ZetaValue z3 = zeta(3.0);

  std::vector<ConstantRow> rows;
  auto real = [&](std::string q, double v, std::optional<double> e) {
    rows.push_back({std::move(q), std::nullopt, format_real(v), false, e});
  };
  real("C4", c4.value, c4.tail_bound);
  real("c1", P.c1, P.c1_error);
  real("c0", P.c0, P.c0_error);
  real("zeta3", z3.value, z3.error_bound);
  for (Variant v : {Variant::paper, Variant::chain}) {
    const std::string tag = v == Variant::paper ? "paper" : "chain";
    const double f = star_factor(v);
    const double star = f * c4.value;
    real("C4_star_" + tag, star, f * c4.tail_bound);
    real("C4_star_" + tag + "_over_zeta3", star / z3.value,
         f * c4.tail_bound / z3.value + star * z3.error_bound / (z3.value * z3.value));
  }
  real("variant_ratio", double{kChainStarNumerator} / kPaperStarNumerator, std::nullopt);

  if (!bounds.empty()) {
    const SpfSieve sieve = obtain_sieve(o.cfg, bounds.back(), err);
    for (const DiscrepancyRow& d : constant_discrepancy(sieve, bounds, P, parallel(o.cfg))) {
      rows.push_back({"n_star", d.B, to_string(d.n_star), true, std::nullopt});
      rows.push_back({"empirical_ratio", d.B, format_real(d.empirical), false, std::nullopt});
      rows.push_back({"empirical_over_paper", d.B, format_real(d.empirical / d.paper_factor), false, std::nullopt});
      rows.push_back({"empirical_over_chain", d.B, format_real(d.empirical / d.chain_factor), false, std::nullopt});
    }
  }

  if (o.cfg.format == Format::csv) {
    out << "quantity,bound,value,error\n";
    for (const auto& r : rows) {
      out << r.quantity << ',' << (r.bound ? std::to_string(*r.bound) : "") << ',' << r.value << ','
          << (r.error ? format_real(*r.error) : "") << '\n';
    }
  } else {
    std::vector<JsonRow> json;
    for (const auto& r : rows) {
      json.push_back({{"quantity", json_string(r.quantity)},
                      {"bound", r.bound ? std::to_string(*r.bound) : "null"},
                      {"value", r.exact ? json_string(r.value) : r.value},
                      {"error", json_real(r.error)}});
    }
    write_json_rows(out, json);
  }
  return kExitOk;
}

}  // namespace

std::vector<CheckResult> run_suite(const std::string& suite, const RunConfig& cfg) {
  if (suite == "local") return suite_local();
  if (suite == "formal") return suite_formal();
  const SpfSieve sieve = build_spf_sieve(kVerifySieve);
  if (suite == "global") return suite_global(sieve, cfg);
  if (suite == "partition") return suite_partition(sieve, cfg);
  if (suite == "oracle") return suite_oracle(sieve, cfg);
  if (suite == "telescope") return suite_telescope(sieve, cfg);
  throw std::invalid_argument("unknown suite '" + suite + "'");
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Options o;
  o.cfg.threads = RunConfig::default_threads();

  CLI::App app{"Exact point counts on x^4 = (y1^2+y2^2+y3^2+y4^2) z^2"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--format", o.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--threads", o.cfg.threads, "Worker threads (default: QPC_THREADS or all cores)")
      ->check(CLI::PositiveNumber);
  app.add_option("--sieve-limit", o.cfg.sieve_limit, "Smallest-prime-factor sieve size")
      ->check(CLI::PositiveNumber);
  app.add_option("--prime-limit", o.cfg.prime_limit, "Largest prime in Euler products")
      ->check(CLI::PositiveNumber);
  app.add_option("--cache", o.cfg.cache_path, "Sieve cache file");
  app.add_option("--tolerance", o.cfg.tolerance, "Numeric tolerance for verify suites")
      ->check(CLI::PositiveNumber);
  bool no_timing = false;
  app.add_flag("--no-timing", no_timing, "Report 0 seconds so that outputs are reproducible");

  auto* count = app.add_subcommand("count", "Count points of bounded height");
  count->add_option("--kind", o.kind)->required()->check(CLI::IsMember({"star", "primitive"}));
  count->add_option("--B", o.B, "Height bound")->required();
  count->add_option("--variant", o.variant)->check(CLI::IsMember({"paper", "chain"}));
  count->add_flag("--projective", o.projective, "Count projective points (halves the primitive count)");

  auto* table = app.add_subcommand("table", "Exact counts against main terms");
  table->add_option("--kind", o.kind)->required()->check(CLI::IsMember({"S", "T", "N_star", "N_u"}));
  table->add_option("--bounds", o.bounds, "Comma-separated ascending bounds");
  table->add_option("--variant", o.variant)->check(CLI::IsMember({"paper", "chain"}));

  auto* verify = app.add_subcommand("verify", "Run an invariant suite");
  verify->add_option("--suite", o.suite)
      ->required()
      ->check(CLI::IsMember({"local", "formal", "global", "partition", "oracle", "telescope"}));

  auto* constant = app.add_subcommand("constant", "Leading constants with error bounds");
  constant->add_option("--bounds", o.bounds, "Bounds for the empirical ratio n_star(B)/(C4 B^3 log B)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  o.cfg.format = o.format == "json" ? Format::json : Format::csv;
  o.cfg.timing = !no_timing;
  omp_set_num_threads(o.cfg.threads);

  try {
    if (*count) return cmd_count(o, out, err);
    if (*table) return cmd_table(o, out, err);
    if (*verify) return cmd_verify(o, out, err);
    return cmd_constant(o, out, err);
  } catch (const ResourceError& e) {
    err << "resource error: " << e.what() << "\n";
    return kExitResource;
  } catch (const std::bad_alloc&) {
    err << "resource error: out of memory\n";
    return kExitResource;
  } catch (const NumericalError& e) {
    err << "numerical error: " << e.what() << "\n";
    return kExitResource;
  } catch (const std::overflow_error& e) {
    err << "resource error: " << e.what() << "\n";
    return kExitResource;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}

}  // namespace qpc::cli
