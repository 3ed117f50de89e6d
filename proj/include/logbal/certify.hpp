#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "logbal/recurrence.hpp"
#include "logbal/tail.hpp"

namespace logbal {

/// slope * n + intercept
struct Affine {
  Rational slope, intercept;
  Rational at(Index n) const { return slope * Rational(n) + intercept; }
  Polynomial poly() const { return Polynomial::linear(slope, intercept); }
  RationalFunction fn() const { return RationalFunction(poly()); }
  friend bool operator==(const Affine&, const Affine&) = default;
};

enum class BoundShape { constant, affine };
std::string_view to_string(BoundShape s);

/// Envelopes m(n) <= x_n <= M(n) claimed for n >= n0.
struct QuotientBounds {
  BoundShape shape = BoundShape::constant;
  Affine lower, upper;
  Index n0 = 0;

  static QuotientBounds constant(Rational m, Rational M, Index n0);
  static QuotientBounds affine(Affine lower, Affine upper, Index n0);
  std::string to_string() const;
  friend bool operator==(const QuotientBounds&, const QuotientBounds&) = default;
};

/// A polynomial claimed nonnegative at every integer n >= from.
struct TailInequality {
  std::string description;
  Polynomial polynomial;
  Index from = 0;
  /// The rational-function form before clearing denominators.
  std::string expression;
};

/// One exact check lhs <= rhs. kind is "lower_bound" (m(n) <= x_n),
/// "upper_bound" (x_n <= M(n)), "convex" (x_n <= x_{n+1}), "balanced"
/// (x_{n+1} <= ((n+1)/n) x_n) or "balanced_shifted"
/// (x_{n+1} <= ((n-s+1)/(n-s)) x_n with s = shift).
struct BaseCase {
  Index n = 0;
  std::string kind;
  Rational lhs, rhs;
  std::optional<Index> shift;
  bool holds() const { return lhs <= rhs; }
};

enum class Property { log_convex, log_balanced };
std::string_view to_string(Property p);

enum class Method { prop2, prop3, prop4, prop5, three_term_convex, three_term_balanced, order1_direct };
std::string_view to_string(Method m);

struct VerifiedBounds {
  QuotientBounds bounds;
  /// Index from which the inductive step is proven symbolically.
  Index step_from = 0;
  std::vector<TailInequality> proof;
  /// Exact checks of m(k) <= x_k and x_k <= M(k) for k in [n0, step_from).
  std::vector<BaseCase> base_cases;
};

struct Certificate {
  Property property = Property::log_convex;
  Method method = Method::prop2;
  std::optional<QuotientBounds> bounds;
  /// Index from which the symbolic induction runs.
  Index n_star = 0;
  /// Smallest index h with the defining inequality proven for every n >= h.
  Index holds_from = 0;
  /// log_balanced only: smallest s such that (a_n)_{n >= s}, re-indexed from 0, is log-balanced.
  std::optional<Index> reindexed_from;
  /// log_balanced only: index from which all determinant functions are nonnegative.
  std::optional<Index> delta_nonneg_from;
  std::vector<TailInequality> tail_inequalities;
  std::vector<BaseCase> base_cases;
  std::vector<TailInequality> bounds_proof;
};

struct Failure {
  std::string stage;   // bounds, log_convex, log_balanced, input
  std::string reason;  // base_case, tail, seed, unsupported_sign_pattern, ...
  std::string detail;
  std::optional<Index> witness;
  /// Named exact values at the witness.
  std::vector<std::pair<std::string, Rational>> values;
};

template <class T>
using Outcome = std::variant<T, Failure>;

struct CertifyOptions {
  Index probe_window = 30;
  Index max_base = 200;
  std::optional<QuotientBounds> bounds_override;
};

/// Heuristic, unverified bounds guessed from the first probe_window quotients
/// generated by the quotient recurrence. Throws AnalysisError when fewer than
/// 5 quotients are usable.
QuotientBounds propose_bounds(const Recurrence& rec, Index probe_window = 30);

Outcome<VerifiedBounds> verify_bounds(const Recurrence& rec, const QuotientBounds& b);

Outcome<Certificate> certify_log_convex(const Recurrence& rec, const VerifiedBounds& vb,
                                        Index max_base = 200);

Outcome<Certificate> certify_log_balanced(const Recurrence& rec, const VerifiedBounds& vb,
                                          const Certificate& convex, Index max_base = 200);

/// Order-1 recurrences need no bounds: x_n = R(n).
Outcome<Certificate> certify_order1(const Recurrence& rec, Property property, Index max_base = 200);

enum class Verdict { log_balanced, log_convex, not_certified };
std::string_view to_string(Verdict v);

struct Report {
  Recurrence input;
  Recurrence analysed;  // after homogenization
  bool homogenized = false;
  Verdict verdict = Verdict::not_certified;
  std::vector<Certificate> certificates;
  std::vector<Failure> failures;
  std::vector<Rational> terms_prefix;

  const Certificate* find(Property p) const;
  bool certified(Property p) const { return find(p) != nullptr; }
};

Report certify_pipeline(const Recurrence& rec, const CertifyOptions& opts = {});

/// Exact check of the defining inequalities against freshly computed terms.
/// Returns the first index in [from, to] where one fails.
std::optional<Index> first_defining_violation(const Recurrence& rec, Property p, Index from, Index to);

}  // namespace logbal
