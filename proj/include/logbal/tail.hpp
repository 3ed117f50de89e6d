#pragma once

#include <optional>
#include <string_view>

#include "logbal/ratfunc.hpp"

namespace logbal {

// Sign decisions on integer tails {n0, n0+1, ...}.
//
// Every procedure here is exact. Integers beyond the Cauchy root bound carry
// the sign of the leading coefficient, so an exhaustive scan up to that bound
// decides the question. The scan stops early as soon as a Taylor shift
// P(x + k) has only nonnegative coefficients, which proves P >= 0 on [k, inf).

struct TailCheck {
  bool holds = true;
  /// Smallest n >= n0 violating the inequality, when it fails.
  std::optional<Index> fails_at;
  explicit operator bool() const { return holds; }
};

/// P(n) >= 0 for every integer n >= n0.
TailCheck poly_tail_nonneg(const Polynomial& p, Index n0);
/// P(n) > 0 for every integer n >= n0.
TailCheck poly_tail_positive(const Polynomial& p, Index n0);

/// Smallest s >= lo such that P(n) >= 0 (> 0 when strict) for all n >= s;
/// nullopt when no such s exists.
std::optional<Index> poly_tail_start(const Polynomial& p, Index lo, bool strict = false);

std::optional<Index> first_integer_root(const Polynomial& p, Index n0);
std::optional<Index> last_integer_root(const Polynomial& p, Index n0);

/// ceil(1 + max_i |a_i / a_d|); every real root lies strictly below it in magnitude.
Integer cauchy_bound(const Polynomial& p);

enum class TailSign { positive, nonnegative, zero, nonpositive, negative, varies };
std::string_view to_string(TailSign s);

/// Strongest sign class of F on the integers n >= n0. Throws PoleError when
/// the denominator vanishes at some integer n >= n0.
TailSign ratfunc_tail_sign(const RationalFunction& f, Index n0);

/// Limiting sign of F and the index from which F has that (weak) sign on
/// every integer. F is pole-free from `from` onwards.
struct EventualSign {
  int sign = 0;
  Index from = 0;
};
EventualSign eventual_sign(const RationalFunction& f, Index lo);

/// Primitive integer polynomial with the same sign as F at every integer
/// n >= n0: the numerator when the denominator keeps a strict sign there,
/// numerator * denominator otherwise. Throws PoleError on a tail pole.
Polynomial cleared_numerator(const RationalFunction& f, Index n0);

}  // namespace logbal
