#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "semid/modular.hpp"
#include "semid/rational.hpp"

namespace semid {

/// Exponent vector over a fixed, ordered list of variables.
class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(int nvars) : exps_(static_cast<std::size_t>(nvars), 0) {}
  static Monomial variable(int nvars, int index, int power = 1);

  [[nodiscard]] int nvars() const { return static_cast<int>(exps_.size()); }
  [[nodiscard]] int exponent(int var) const { return exps_[static_cast<std::size_t>(var)]; }
  [[nodiscard]] int degree() const;

  /// True iff every exponent of `other` is <= the matching one here.
  [[nodiscard]] bool divisible_by(const Monomial& other) const;
  [[nodiscard]] Monomial operator*(const Monomial& other) const;
  /// Requires divisible_by(other).
  [[nodiscard]] Monomial operator/(const Monomial& other) const;

  friend bool operator==(const Monomial&, const Monomial&) = default;

 private:
  friend struct GradedLexGreater;
  std::vector<std::uint16_t> exps_;
};

/// Graded lexicographic order, larger monomials first: total degree, then
/// exponent of the earliest variable.
struct GradedLexGreater {
  bool operator()(const Monomial& a, const Monomial& b) const;
};

/// Sparse multivariate polynomial with exact rational coefficients over
/// `nvars` variables. No zero coefficient is ever stored; terms iterate in
/// descending graded lex order, so the first term is the leading term.
class Polynomial {
 public:
  using Terms = std::map<Monomial, Rational, GradedLexGreater>;

  Polynomial() = default;
  explicit Polynomial(int nvars) : nvars_(nvars) {}
  static Polynomial constant(int nvars, const Rational& c);
  static Polynomial variable(int nvars, int index);
  static Polynomial term(const Monomial& m, const Rational& c);

  [[nodiscard]] int nvars() const { return nvars_; }
  [[nodiscard]] bool is_zero() const { return terms_.empty(); }
  [[nodiscard]] const Terms& terms() const { return terms_; }
  [[nodiscard]] int total_degree() const;
  /// Number of stored terms.
  [[nodiscard]] std::size_t size() const { return terms_.size(); }

  /// True iff every term contains variable `var` (zero counts as divisible).
  [[nodiscard]] bool divisible_by_variable(int var) const;

  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial& operator*=(const Rational& c);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, const Rational& c) { return a *= c; }
  friend Polynomial operator*(const Rational& c, Polynomial a) { return a *= c; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  Polynomial operator-() const { return *this * Rational(-1); }

  /// Exact quotient; throws std::domain_error if `divisor` does not divide.
  [[nodiscard]] Polynomial exact_divide(const Polynomial& divisor) const;

  [[nodiscard]] Polynomial derivative(int var) const;

  /// Values at a point; `values` holds one entry per variable. Throws
  /// std::invalid_argument on a size mismatch.
  [[nodiscard]] Rational evaluate(std::span<const Rational> values) const;
  [[nodiscard]] double evaluate(std::span<const double> values) const;
  [[nodiscard]] std::uint64_t evaluate(const PrimeField& field,
                                       std::span<const std::uint64_t> values) const;

  /// Canonical text, e.g. "2*s*l_1_2" or "l_1_2^2 + l_1_3^2 + 1". Factors
  /// inside a term are printed in `print_order`; terms in graded lex order.
  [[nodiscard]] std::string to_string(std::span<const std::string> names,
                                      std::span<const int> print_order = {}) const;

  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    return a.terms_ == b.terms_;
  }

 private:
  void add_term(const Monomial& m, const Rational& c);

  int nvars_ = 0;
  Terms terms_;
};

/// Parses the canonical text form back into a polynomial: integer or
/// rational coefficients, '*' products, '^' powers, '+'/'-' sums. Variable
/// names must appear in `names`.
Polynomial parse_polynomial(std::string_view text, std::span<const std::string> names);

}  // namespace semid
