#pragma once

#include <optional>
#include <string>

#include "logbal/polynomial.hpp"

namespace logbal {

/// Quotient of two polynomials in n.
///
/// Stored in a canonical form: common polynomial factors cancelled, both
/// parts scaled to integer coefficients with overall content 1, and the
/// denominator's leading coefficient positive. Equal functions therefore have
/// identical representations.
class RationalFunction {
 public:
  RationalFunction() : den_(Polynomial::constant(1)) {}
  RationalFunction(const Rational& c);     // NOLINT(google-explicit-constructor)
  RationalFunction(long c) : RationalFunction(Rational(c)) {}  // NOLINT
  RationalFunction(const Polynomial& p);  // NOLINT
  /// Throws ArithmeticError when den is the zero polynomial.
  RationalFunction(Polynomial num, Polynomial den);

  static RationalFunction variable() { return RationalFunction(Polynomial::variable()); }

  const Polynomial& numerator() const { return num_; }
  const Polynomial& denominator() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_constant() const { return num_.is_constant() && den_.is_constant(); }

  /// Throws PoleError (or ArithmeticError for non-integer x) at a zero of the denominator.
  Rational operator()(const Rational& x) const;
  Rational at(Index n) const { return (*this)(Rational(n)); }

  /// Limit as n -> infinity; nullopt when unbounded.
  std::optional<Rational> limit_at_infinity() const;

  RationalFunction& operator+=(const RationalFunction& rhs);
  RationalFunction& operator-=(const RationalFunction& rhs);
  RationalFunction& operator*=(const RationalFunction& rhs);
  RationalFunction& operator/=(const RationalFunction& rhs);
  friend RationalFunction operator+(RationalFunction a, const RationalFunction& b) { return a += b; }
  friend RationalFunction operator-(RationalFunction a, const RationalFunction& b) { return a -= b; }
  friend RationalFunction operator*(RationalFunction a, const RationalFunction& b) { return a *= b; }
  friend RationalFunction operator/(RationalFunction a, const RationalFunction& b) { return a /= b; }
  RationalFunction operator-() const;
  RationalFunction pow(unsigned exponent) const;

  friend bool operator==(const RationalFunction&, const RationalFunction&) = default;

  /// n -> F(n + shift)
  RationalFunction shifted(Index shift) const;

  std::string to_string() const;

 private:
  void normalize();
  Polynomial num_, den_;
};

/// n -> F(n+1) - F(n)
RationalFunction forward_diff(const RationalFunction& f);

enum class DetKind { delta, delta_bar };

/// delta:     n -> (n+1) F(n) - n F(n+1)
/// delta_bar: n -> (n+1) F(n) - (n-1) F(n+1)
RationalFunction weighted_det(const RationalFunction& f, DetKind kind);

}  // namespace logbal
