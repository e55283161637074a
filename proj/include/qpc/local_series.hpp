// Sparse trivariate power series with exact rational coefficients.
//
// Truncation is by weighted degree: a monomial x^i y^j z^k has degree
// w0*i + w1*j + w2*k and is dropped once that exceeds max_degree.  With
// weights (1,0,0) this is truncation in x alone; with (1,1,1) it is total
// degree.  An unbounded truncation makes the type an exact polynomial ring.
#pragma once

#include <array>
#include <limits>
#include <map>
#include <string>

#include <gmpxx.h>

namespace qpc {

using Exponent = std::array<int, 3>;

struct Truncation {
  std::array<int, 3> weights{1, 0, 0};
  int max_degree = std::numeric_limits<int>::max();

  static Truncation in_first(int d) { return {{1, 0, 0}, d}; }
  static Truncation total(int d) { return {{1, 1, 1}, d}; }
  static Truncation none() { return {{1, 1, 1}, std::numeric_limits<int>::max()}; }

  bool bounded() const { return max_degree != std::numeric_limits<int>::max(); }
  long degree(const Exponent& e) const {
    return long{weights[0]} * e[0] + long{weights[1]} * e[1] + long{weights[2]} * e[2];
  }
  bool keeps(const Exponent& e) const { return degree(e) <= max_degree; }

  friend bool operator==(const Truncation&, const Truncation&) = default;
};

class LocalSeries {
 public:
  using Terms = std::map<Exponent, mpq_class>;

  explicit LocalSeries(Truncation t = Truncation::none(), std::array<char, 3> names = {'x', 'y', 'z'})
      : trunc_(t), names_(names) {}

  static LocalSeries constant(const mpq_class& c, Truncation t = Truncation::none(),
                              std::array<char, 3> names = {'x', 'y', 'z'});
  static LocalSeries monomial(const mpq_class& c, Exponent e, Truncation t = Truncation::none(),
                              std::array<char, 3> names = {'x', 'y', 'z'});

  const Terms& terms() const { return terms_; }
  const Truncation& truncation() const { return trunc_; }
  const std::array<char, 3>& names() const { return names_; }
  mpq_class coefficient(const Exponent& e) const;
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  // Adds c x^e (dropped if beyond the truncation).
  void add_term(const Exponent& e, const mpq_class& c);

  LocalSeries& operator+=(const LocalSeries& o);
  LocalSeries& operator-=(const LocalSeries& o);
  friend LocalSeries operator+(LocalSeries a, const LocalSeries& b) { return a += b; }
  friend LocalSeries operator-(LocalSeries a, const LocalSeries& b) { return a -= b; }
  friend LocalSeries operator*(const LocalSeries& a, const LocalSeries& b);
  LocalSeries operator*(const mpq_class& c) const;

  // Multiplicative inverse to the truncation.  Requires a nonzero constant
  // term, a bounded truncation, and positive degree on every other term;
  // throws std::domain_error otherwise.
  LocalSeries inverse() const;

  // Sets variable v to zero.
  LocalSeries at_zero(int v) const;

  // Same terms under a coarser truncation.
  LocalSeries truncated(Truncation t) const;

  std::string to_string() const;

  friend bool operator==(const LocalSeries& a, const LocalSeries& b) { return a.terms_ == b.terms_; }

 private:
  Truncation trunc_;
  std::array<char, 3> names_;
  Terms terms_;
};

}  // namespace qpc
