#include "logbal/tail.hpp"

#include <vector>

namespace logbal {

namespace {

// Exhaustive scans longer than this without an early exit are refused.
constexpr Index kMaxScan = 50'000'000;

Integer eval_at(const std::vector<Integer>& c, Index n) {
  Integer acc = 0;
  const Integer x = n;
  for (auto it = c.rbegin(); it != c.rend(); ++it) {
    acc *= x;
    acc += *it;
  }
  return acc;
}

/// All coefficients of Q(x + k) nonnegative (constant term positive when strict).
bool taylor_certifies(std::vector<Integer> c, Index k, bool strict) {
  const int d = static_cast<int>(c.size()) - 1;
  const Integer shift = k;
  for (int i = 0; i < d; ++i)
    for (int j = d - 1; j >= i; --j) c[j] += shift * c[j + 1];
  for (const auto& x : c)
    if (sgn(x) < 0) return false;
  return !strict || sgn(c.front()) > 0;
}

Index scan_limit(const Polynomial& p, Index n0) {
  Integer b = cauchy_bound(p);
  if (!b.fits_slong_p() || b.get_si() - n0 > kMaxScan) return n0 + kMaxScan;
  return std::max<Index>(n0, b.get_si());
}

void guard_scan(Index n, Index n0) {
  if (n - n0 >= kMaxScan) throw ArithmeticError("root bound too large for an exhaustive tail scan");
}

/// First n >= n0 with P(n) < 0 (<= 0 when strict).
std::optional<Index> first_violation(const Polynomial& p, Index n0, bool strict) {
  if (p.is_zero()) return strict ? std::optional<Index>(n0) : std::nullopt;
  const std::vector<Integer> c = p.integer_coefficients();
  const bool rising = sgn(c.back()) > 0;
  const Index hi = scan_limit(p, n0);
  Index next_check = n0, stride = 1;
  for (Index n = n0; n <= hi; ++n) {
    guard_scan(n, n0);
    if (rising && n == next_check) {
      if (taylor_certifies(c, n, strict)) return std::nullopt;
      next_check = n + stride;
      stride *= 2;
    }
    const int s = sgn(eval_at(c, n));
    if (s < 0 || (strict && s == 0)) return n;
  }
  if (!rising) return hi + 1;
  return std::nullopt;
}

}  // namespace

Integer cauchy_bound(const Polynomial& p) {
  if (p.degree() <= 0) return 1;
  Rational lead = p.leading().abs();
  Rational best;
  for (int k = 0; k < p.degree(); ++k) {
    Rational r = p.coefficient(k).abs() / lead;
    if (r > best) best = r;
  }
  return (best + Rational(1)).ceil();
}

TailCheck poly_tail_nonneg(const Polynomial& p, Index n0) {
  auto bad = first_violation(p, n0, false);
  return {!bad.has_value(), bad};
}

TailCheck poly_tail_positive(const Polynomial& p, Index n0) {
  auto bad = first_violation(p, n0, true);
  return {!bad.has_value(), bad};
}

std::optional<Index> poly_tail_start(const Polynomial& p, Index lo, bool strict) {
  if (p.is_zero()) return strict ? std::nullopt : std::optional<Index>(lo);
  const std::vector<Integer> c = p.integer_coefficients();
  if (sgn(c.back()) < 0) return std::nullopt;
  const Index hi = scan_limit(p, lo);
  std::optional<Index> last_bad;
  Index next_check = lo, stride = 1;
  for (Index n = lo; n <= hi; ++n) {
    guard_scan(n, lo);
    if (n == next_check) {
      if (taylor_certifies(c, n, strict)) break;
      next_check = n + stride;
      stride *= 2;
    }
    const int s = sgn(eval_at(c, n));
    if (s < 0 || (strict && s == 0)) last_bad = n;
  }
  return last_bad ? *last_bad + 1 : lo;
}

namespace {

template <bool First>
std::optional<Index> integer_root(const Polynomial& p, Index n0) {
  if (p.is_zero()) return n0;
  if (p.degree() == 0) return std::nullopt;
  std::vector<Integer> c = p.integer_coefficients();
  if (sgn(c.back()) < 0)
    for (auto& x : c) x = -x;
  const Index hi = scan_limit(p, n0);
  std::optional<Index> found;
  Index next_check = n0, stride = 1;
  for (Index n = n0; n <= hi; ++n) {
    guard_scan(n, n0);
    if (n == next_check) {
      if (taylor_certifies(c, n, true)) break;
      next_check = n + stride;
      stride *= 2;
    }
    if (sgn(eval_at(c, n)) == 0) {
      found = n;
      if constexpr (First) break;
    }
  }
  return found;
}

}  // namespace

std::optional<Index> first_integer_root(const Polynomial& p, Index n0) {
  return integer_root<true>(p, n0);
}

std::optional<Index> last_integer_root(const Polynomial& p, Index n0) {
  return integer_root<false>(p, n0);
}

std::string_view to_string(TailSign s) {
  switch (s) {
    case TailSign::positive: return "positive";
    case TailSign::nonnegative: return "nonnegative";
    case TailSign::zero: return "zero";
    case TailSign::nonpositive: return "nonpositive";
    case TailSign::negative: return "negative";
    case TailSign::varies: return "varies";
  }
  return "varies";
}

TailSign ratfunc_tail_sign(const RationalFunction& f, Index n0) {
  if (auto pole = first_integer_root(f.denominator(), n0))
    throw PoleError(*pole, "rational function " + f.to_string());
  if (f.is_zero()) return TailSign::zero;
  const Polynomial p = f.numerator() * f.denominator();
  if (!first_violation(p, n0, true)) return TailSign::positive;
  if (!first_violation(-p, n0, true)) return TailSign::negative;
  if (!first_violation(p, n0, false)) return TailSign::nonnegative;
  if (!first_violation(-p, n0, false)) return TailSign::nonpositive;
  return TailSign::varies;
}

EventualSign eventual_sign(const RationalFunction& f, Index lo) {
  if (f.is_zero()) return {0, lo};
  Index start = lo;
  if (auto pole = last_integer_root(f.denominator(), lo)) start = *pole + 1;
  const Polynomial p = f.numerator() * f.denominator();
  const int s = p.leading().sign();
  auto from = poly_tail_start(s > 0 ? p : -p, start);
  return {s, *from};
}

Polynomial cleared_numerator(const RationalFunction& f, Index n0) {
  if (auto pole = first_integer_root(f.denominator(), n0))
    throw PoleError(*pole, "rational function " + f.to_string());
  const Polynomial& den = f.denominator();
  Polynomial out;
  if (!first_violation(den, n0, true))
    out = f.numerator();
  else if (!first_violation(-den, n0, true))
    out = -f.numerator();
  else
    out = f.numerator() * den;
  return out.primitive_part().second;
}

}  // namespace logbal
