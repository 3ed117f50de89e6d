#include "logbal/analysis.hpp"

#include <algorithm>

namespace logbal {

std::string_view to_string(LogBehavior b) {
  switch (b) {
    case LogBehavior::log_convex: return "log_convex";
    case LogBehavior::log_concave: return "log_concave";
    case LogBehavior::log_straight: return "log_straight";
    case LogBehavior::log_fibonacci: return "log_fibonacci";
    case LogBehavior::mixed: return "mixed";
  }
  return "mixed";
}

Classification classify(const TermTable& tab) {
  const auto& a = tab.terms;
  if (a.size() < 3) throw AnalysisError("classification needs at least 3 terms, got " + std::to_string(a.size()));
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i].sign() <= 0)
      throw AnalysisError("term a_" + std::to_string(tab.offset + static_cast<Index>(i)) +
                          " = " + a[i].to_string() + " is not positive");

  std::vector<int> signs;
  for (std::size_t i = 1; i + 1 < a.size(); ++i) signs.push_back((a[i] * a[i] - a[i - 1] * a[i + 1]).sign());

  Classification c;
  c.first = tab.offset + 1;
  c.last = tab.end() - 2;
  auto index_of = [&](std::size_t k) { return c.first + static_cast<Index>(k); };
  auto first_nonzero = std::find_if(signs.begin(), signs.end(), [](int s) { return s != 0; });
  if (first_nonzero != signs.end()) c.witness = index_of(static_cast<std::size_t>(first_nonzero - signs.begin()));

  const bool none_pos = std::none_of(signs.begin(), signs.end(), [](int s) { return s > 0; });
  const bool none_neg = std::none_of(signs.begin(), signs.end(), [](int s) { return s < 0; });
  if (none_pos && none_neg) {
    c.verdict = LogBehavior::log_straight;
  } else if (none_pos) {
    c.verdict = LogBehavior::log_convex;
  } else if (none_neg) {
    c.verdict = LogBehavior::log_concave;
  } else {
    bool alternating = signs[0] != 0;
    std::size_t k = 1;
    for (; alternating && k < signs.size(); ++k)
      if (signs[k] == 0 || signs[k] != -signs[k - 1]) alternating = false;
    if (alternating) {
      c.verdict = LogBehavior::log_fibonacci;
    } else {
      c.verdict = LogBehavior::mixed;
      c.witness = index_of(signs[0] == 0 ? 0 : k - 1);
    }
  }
  return c;
}

Prop1Report check_prop1(const TermTable& tab, Index max_sum, std::optional<Index> a_from) {
  Prop1Report rep;
  rep.max_sum = max_sum;
  rep.part_a_from = std::max<Index>({1, tab.offset + 1, a_from.value_or(1)});
  rep.part_a_to = tab.end() - 2;
  for (Index n = rep.part_a_from; n <= rep.part_a_to; ++n) {
    const Rational sq = tab.at(n) * tab.at(n);
    const Rational mid = tab.at(n - 1) * tab.at(n + 1);
    const Rational hi = sq * Rational(n + 1, n);
    if (sq > mid || mid > hi) rep.part_a_violations.push_back({n, sq, mid, hi});
  }

  rep.part_b_applicable = tab.offset == 0 && !tab.terms.empty() && tab.terms[0] == Rational(1);
  if (!rep.part_b_applicable) return rep;
  if (max_sum >= tab.end())
    throw AnalysisError("part (b) up to n + m = " + std::to_string(max_sum) + " needs terms through a_" +
                        std::to_string(max_sum));
  for (Index s = 0; s <= max_sum; ++s) {
    for (Index n = 0; n <= s; ++n) {
      const Index m = s - n;
      const Rational lower = tab.at(n) * tab.at(m);
      const Rational upper = lower * Rational(binomial(static_cast<unsigned long>(s), static_cast<unsigned long>(n)));
      const Rational& value = tab.at(s);
      if (lower > value || value > upper) rep.part_b_violations.push_back({n, m, lower, value, upper});
    }
  }
  return rep;
}

}  // namespace logbal
