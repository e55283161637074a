#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ostream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "qpc/cli.hpp"

namespace qpc::cli {

int RunConfig::default_threads() {
  if (const char* env = std::getenv("QPC_THREADS"); env && *env) {
    int v = 0;
    const char* end = env + std::char_traits<char>::length(env);
    const auto [ptr, ec] = std::from_chars(env, end, v);
    if (ec == std::errc{} && ptr == end && v > 0) return v;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

std::vector<u64> parse_bounds(const std::string& text) {
  std::vector<u64> out;
  if (text.empty()) return out;
  std::size_t pos = 0;
  while (true) {
    const std::size_t comma = text.find(',', pos);
    const std::string item = text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    u64 v = 0;
    const auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
    if (item.empty() || ec != std::errc{} || ptr != item.data() + item.size()) {
      throw std::invalid_argument("malformed bound '" + item + "'");
    }
    out.push_back(v);
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

std::string format_real(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string json_string(const std::string& s) { return nlohmann::json(s).dump(); }

std::string json_real(std::optional<double> v) {
  if (!v || !std::isfinite(*v)) return "null";
  return format_real(*v);
}

void write_json_rows(std::ostream& out, const std::vector<JsonRow>& rows) {
  out << "[";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    out << (i ? ",\n  {" : "\n  {");
    for (std::size_t k = 0; k < rows[i].size(); ++k) {
      out << (k ? ", " : "") << json_string(rows[i][k].first) << ": " << rows[i][k].second;
    }
    out << "}";
  }
  out << (rows.empty() ? "]\n" : "\n]\n");
}

void write_records(std::ostream& out, const std::vector<CountRecord>& records, Format f, bool timing) {
  if (f == Format::csv) {
    auto opt = [](const std::optional<double>& v) { return v ? format_real(*v) : std::string(); };
    out << "kind,bound,exact,predicted,ratio,seconds\n";
    for (const auto& r : records) {
      out << r.kind << ',' << r.bound << ',' << to_string(r.exact_count) << ',' << opt(r.predicted_main) << ','
          << opt(r.ratio) << ',' << format_real(timing ? r.elapsed : 0.0) << '\n';
    }
    return;
  }
  std::vector<JsonRow> rows;
  for (const auto& r : records) {
    rows.push_back({{"kind", json_string(r.kind)},
                    {"bound", std::to_string(r.bound)},
                    {"exact", json_string(to_string(r.exact_count))},  // may exceed 64 bits
                    {"predicted", json_real(r.predicted_main)},
                    {"ratio", json_real(r.ratio)},
                    {"seconds", json_real(timing ? r.elapsed : 0.0)}});
  }
  write_json_rows(out, rows);
}

void write_checks(std::ostream& out, const std::string& suite, const std::vector<CheckResult>& checks,
                  Format f) {
  if (f == Format::csv) {
    out << "suite,check,status,detail\n";
    for (const auto& c : checks) {
      out << suite << ',' << c.name << ',' << (c.passed ? "pass" : "fail") << ",\"" << c.detail << "\"\n";
    }
    return;
  }
  std::vector<JsonRow> rows;
  for (const auto& c : checks) {
    rows.push_back({{"suite", json_string(suite)},
                    {"check", json_string(c.name)},
                    {"status", json_string(c.passed ? "pass" : "fail")},
                    {"detail", json_string(c.detail)}});
  }
  write_json_rows(out, rows);
}

}  // namespace qpc::cli
