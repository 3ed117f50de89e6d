#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "logbal/recurrence.hpp"

namespace logbal {

enum class LogBehavior { log_convex, log_concave, log_straight, log_fibonacci, mixed };
std::string_view to_string(LogBehavior b);

struct Classification {
  LogBehavior verdict = LogBehavior::mixed;
  /// Interior indices examined: d_n = a_n^2 - a_{n-1} a_{n+1} for n in [first, last].
  Index first = 0, last = 0;
  /// For mixed: first index where the pattern breaks. Otherwise the index of
  /// the first strict comparison, if any.
  std::optional<Index> witness;
};

/// Exact classification of a window of positive terms (at least three).
Classification classify(const TermTable& tab);

struct Prop1ViolationA {
  Index n;
  Rational lhs, mid, rhs;  // a_n^2, a_{n-1} a_{n+1}, (1 + 1/n) a_n^2
};

struct Prop1ViolationB {
  Index n, m;
  Rational lower, value, upper;  // a_n a_m, a_{n+m}, C(n+m, n) a_n a_m
};

struct Prop1Report {
  std::vector<Prop1ViolationA> part_a_violations;
  std::vector<Prop1ViolationB> part_b_violations;
  bool part_b_applicable = false;
  Index part_a_from = 1, part_a_to = 0;
  Index max_sum = 0;
  bool clean() const { return part_a_violations.empty() && part_b_violations.empty(); }
};

/// a_n^2 <= a_{n-1} a_{n+1} <= (1 + 1/n) a_n^2 for every n >= max(1, a_from)
/// inside the table, and, when the table starts at a_0 = 1,
/// a_n a_m <= a_{n+m} <= C(n+m, n) a_n a_m for n + m <= max_sum.
Prop1Report check_prop1(const TermTable& tab, Index max_sum, std::optional<Index> a_from = {});

}  // namespace logbal
