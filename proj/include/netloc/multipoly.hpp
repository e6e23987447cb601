#pragma once

// Sparse multivariate polynomials with exact rational coefficients.

#include "netloc/rational.hpp"

#include <map>
#include <span>
#include <string>
#include <vector>

namespace netloc {

/// Graded lexicographic order on exponent vectors: total degree first, then
/// lexicographic with the first variable most significant.
struct GradedLex {
  bool operator()(const std::vector<int>& a, const std::vector<int>& b) const;
};

class MultiPoly {
public:
  using Exponents = std::vector<int>;
  using Terms = std::map<Exponents, Rational, GradedLex>;

  explicit MultiPoly(std::size_t nvars = 0) : nvars_(nvars) {}

  static MultiPoly constant(std::size_t nvars, const Rational& c);
  static MultiPoly variable(std::size_t nvars, std::size_t k);
  static MultiPoly monomial(const Exponents& e, const Rational& c);

  std::size_t nvars() const { return nvars_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  int degree() const;
  /// Degree in a single variable.
  int degree_in(std::size_t var) const;
  Rational coefficient(const Exponents& e) const;
  std::vector<std::size_t> variables_used() const;

  MultiPoly& operator+=(const MultiPoly& o);
  MultiPoly& operator-=(const MultiPoly& o);
  MultiPoly& operator*=(const Rational& c);
  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
  friend MultiPoly operator*(MultiPoly a, const Rational& c) { return a *= c; }
  friend MultiPoly operator*(const Rational& c, MultiPoly a) { return a *= c; }
  friend MultiPoly operator/(MultiPoly a, const Rational& c);
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
  MultiPoly operator-() const;
  MultiPoly pow(unsigned k) const;

  /// Replaces variable `var` by `value` everywhere; `value` may mention `var`.
  MultiPoly substitute(std::size_t var, const MultiPoly& value) const;

  Rational evaluate(std::span<const Rational> point) const;
  double evaluate(std::span<const double> point) const;

  bool operator==(const MultiPoly& o) const { return nvars_ == o.nvars_ && terms_ == o.terms_; }

  /// Terms in decreasing graded-lex order, e.g. "-3*eta^2 + xi*zeta + 1".
  std::string to_string(std::span<const std::string> names) const;

private:
  void check_compatible(const MultiPoly& o) const;
  void add_term(const Exponents& e, const Rational& c);

  std::size_t nvars_;
  Terms terms_;
};

} // namespace netloc
