#pragma once

#include <optional>
#include <string>
#include <vector>

#include "logbal/ratfunc.hpp"

namespace logbal {

/// a_n = R(n) a_{n-1} + S(n) a_{n-2} + T(n) a_{n-3} [+ g(n)], for n >= offset + order.
///
/// coeffs holds [R, S, T] truncated to the order; initials[k] is a_{offset+k}.
struct Recurrence {
  std::vector<RationalFunction> coeffs;
  std::optional<RationalFunction> nonhomog;
  Index offset = 0;
  std::vector<Rational> initials;
  std::string name;
  /// Set by homogenize(): sign (+1 or -1) of the eliminated inhomogeneous term.
  int eliminated_sign = 0;

  int order() const { return static_cast<int>(coeffs.size()); }
  bool homogeneous() const { return !nonhomog.has_value(); }
  const RationalFunction& R() const { return coeffs.at(0); }
  const RationalFunction& S() const { return coeffs.at(1); }
  const RationalFunction& T() const { return coeffs.at(2); }
  /// Coefficient for lag k (1-based); zero beyond the order.
  RationalFunction coeff(int lag) const;
  /// First index computed by the recurrence rather than given.
  Index first_step() const { return offset + order(); }

  /// Throws RecurrenceError on a bad shape and PoleError when a coefficient
  /// has a pole at some integer n >= offset + order.
  void validate() const;
};

Recurrence make_recurrence(std::vector<RationalFunction> coeffs, std::vector<Rational> initials,
                           Index offset = 0, std::optional<RationalFunction> nonhomog = {},
                           std::string name = {});

struct TermTable {
  Index offset = 0;
  std::vector<Rational> terms;

  Index end() const { return offset + static_cast<Index>(terms.size()); }
  bool contains(Index n) const { return n >= offset && n < end(); }
  /// a_n; throws std::out_of_range outside the table.
  const Rational& at(Index n) const;
};

struct QuotientTable {
  /// Index of the first quotient x_{first_index} = a_{first_index} / a_{first_index - 1}.
  Index first_index = 0;
  std::vector<Rational> quotients;
  /// Number of leading terms dropped because of zeros.
  Index skipped = 0;

  Index end() const { return first_index + static_cast<Index>(quotients.size()); }
  bool contains(Index n) const { return n >= first_index && n < end(); }
  const Rational& at(Index n) const;
};

/// The first `count` terms a_offset, ..., a_{offset+count-1}.
TermTable compute_terms(const Recurrence& rec, std::size_t count);

/// Quotients from the first index after the last zero term. Throws
/// RecurrenceError when no two consecutive nonzero terms exist or a zero term
/// appears after that point.
QuotientTable quotient_sequence(const TermTable& tab);

/// Removes the inhomogeneous term by raising the order by one. The result has
/// the same offset and one more initial value.
Recurrence homogenize(const Recurrence& rec);

/// Smallest n from which x_n = R(n) + S(n)/x_{n-1} [+ T(n)/(x_{n-1}x_{n-2})]
/// holds with every quotient on the right defined (order 1: x_n = R(n)).
Index quotient_recurrence_start(const Recurrence& rec, Index first_quotient);

}  // namespace logbal
