#include <sstream>
#include <stdexcept>

#include "qpc/local_series.hpp"

namespace qpc {

LocalSeries LocalSeries::constant(const mpq_class& c, Truncation t, std::array<char, 3> names) {
  return monomial(c, {0, 0, 0}, t, names);
}

LocalSeries LocalSeries::monomial(const mpq_class& c, Exponent e, Truncation t,
                                  std::array<char, 3> names) {
  LocalSeries s(t, names);
  s.add_term(e, c);
  return s;
}

mpq_class LocalSeries::coefficient(const Exponent& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? mpq_class(0) : it->second;
}

void LocalSeries::add_term(const Exponent& e, const mpq_class& value) {
  // mpq_class(n, d) is not reduced on construction; GMP arithmetic needs it.
  mpq_class c = value;
  c.canonicalize();
  if (c == 0 || !trunc_.keeps(e)) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

LocalSeries& LocalSeries::operator+=(const LocalSeries& o) {
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

LocalSeries& LocalSeries::operator-=(const LocalSeries& o) {
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

LocalSeries operator*(const LocalSeries& a, const LocalSeries& b) {
  if (!(a.trunc_ == b.trunc_)) throw std::invalid_argument("LocalSeries: truncation mismatch");
  LocalSeries out(a.trunc_, a.names_);
  for (const auto& [ea, ca] : a.terms_) {
    const long da = a.trunc_.degree(ea);
    for (const auto& [eb, cb] : b.terms_) {
      if (da + a.trunc_.degree(eb) > a.trunc_.max_degree) continue;
      out.add_term({ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]}, ca * cb);
    }
  }
  return out;
}

LocalSeries LocalSeries::operator*(const mpq_class& c) const {
  LocalSeries out(trunc_, names_);
  for (const auto& [e, v] : terms_) out.add_term(e, v * c);
  return out;
}

LocalSeries LocalSeries::inverse() const {
  const mpq_class c0 = coefficient({0, 0, 0});
  if (c0 == 0) throw std::domain_error("LocalSeries::inverse: zero constant term");
  if (!trunc_.bounded()) throw std::domain_error("LocalSeries::inverse: unbounded truncation");
  for (const auto& [e, c] : terms_) {
    if (e != Exponent{0, 0, 0} && trunc_.degree(e) <= 0) {
      throw std::domain_error("LocalSeries::inverse: non-constant term of degree 0");
    }
  }
  // 1/(c0 (1 - u)) = (1/c0) (1 + u (1 + u (1 + ...))), u of degree >= 1.
  LocalSeries u = constant(1, trunc_, names_) - (*this) * (mpq_class(1) / c0);
  LocalSeries acc = constant(1, trunc_, names_);
  for (int k = 0; k < trunc_.max_degree; ++k) acc = constant(1, trunc_, names_) + u * acc;
  return acc * (mpq_class(1) / c0);
}

LocalSeries LocalSeries::at_zero(int v) const {
  LocalSeries out(trunc_, names_);
  for (const auto& [e, c] : terms_) {
    if (e[v] == 0) out.add_term(e, c);
  }
  return out;
}

LocalSeries LocalSeries::truncated(Truncation t) const {
  LocalSeries out(t, names_);
  for (const auto& [e, c] : terms_) out.add_term(e, c);
  return out;
}

std::string LocalSeries::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << c.get_str();
    for (int v = 0; v < 3; ++v) {
      if (e[v] == 0) continue;
      os << '*' << names_[v];
      if (e[v] > 1) os << '^' << e[v];
    }
  }
  return os.str();
}

}  // namespace qpc
