#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "logbal/rational.hpp"

namespace logbal {

/// Univariate polynomial in the index variable n with exact rational
/// coefficients, stored lowest degree first. Trailing zeros are trimmed, so
/// the zero polynomial has no coefficients and degree -1.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<Rational> coefficients);
  Polynomial(std::initializer_list<Rational> coefficients)
      : Polynomial(std::vector<Rational>(coefficients)) {}

  static Polynomial constant(const Rational& c);
  /// The polynomial n.
  static Polynomial variable();
  /// slope * n + intercept
  static Polynomial linear(const Rational& slope, const Rational& intercept);

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  bool is_constant() const { return coeffs_.size() <= 1; }
  /// Zero for the zero polynomial.
  Rational leading() const;
  Rational coefficient(int k) const;
  std::span<const Rational> coefficients() const { return coeffs_; }

  Rational operator()(const Rational& x) const;

  Polynomial& operator+=(const Polynomial& rhs);
  Polynomial& operator-=(const Polynomial& rhs);
  Polynomial& operator*=(const Polynomial& rhs);
  Polynomial& operator*=(const Rational& c);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(Polynomial a, const Rational& c) { return a *= c; }
  friend Polynomial operator*(const Rational& c, Polynomial a) { return a *= c; }
  Polynomial operator-() const;
  Polynomial pow(unsigned exponent) const;

  friend bool operator==(const Polynomial&, const Polynomial&) = default;

  /// The polynomial n -> P(n + shift).
  Polynomial shifted(const Rational& shift) const;

  /// Euclidean division over Q. Throws ArithmeticError for a zero divisor.
  std::pair<Polynomial, Polynomial> divmod(const Polynomial& divisor) const;
  /// Monic greatest common divisor (zero iff both inputs are zero).
  static Polynomial gcd(Polynomial a, Polynomial b);

  /// Positive rational c and integer polynomial Q with content 1 such that
  /// P = c * Q. The zero polynomial yields (1, 0).
  std::pair<Rational, Polynomial> primitive_part() const;
  /// Integer coefficients of primitive_part().second.
  std::vector<Integer> integer_coefficients() const;

  /// e.g. "34*n^3 - 51*n^2 + 27*n - 5"; re-parseable by the recurrence DSL.
  std::string to_string(const std::string& var = "n") const;

 private:
  void trim();
  std::vector<Rational> coeffs_;
};

}  // namespace logbal
