#include "logbal/recurrence.hpp"

#include <algorithm>
#include <stdexcept>

#include "logbal/tail.hpp"

namespace logbal {

RationalFunction Recurrence::coeff(int lag) const {
  if (lag < 1 || lag > order()) return RationalFunction();
  return coeffs[lag - 1];
}

void Recurrence::validate() const {
  if (order() < 1 || order() > 3)
    throw RecurrenceError("recurrence order must be 1, 2 or 3, got " + std::to_string(order()));
  if (static_cast<int>(initials.size()) != order())
    throw RecurrenceError("expected " + std::to_string(order()) + " initial values, got " +
                          std::to_string(initials.size()));
  if (offset < 0) throw RecurrenceError("negative offset");
  if (std::all_of(coeffs.begin(), coeffs.end(), [](const auto& c) { return c.is_zero(); }))
    throw RecurrenceError("all recurrence coefficients are zero");
  for (int k = 1; k <= order(); ++k) {
    const auto& c = coeffs[k - 1];
    if (auto pole = first_integer_root(c.denominator(), first_step()))
      throw PoleError(*pole, "coefficient of a[n-" + std::to_string(k) + "] = " + c.to_string());
  }
  if (nonhomog)
    if (auto pole = first_integer_root(nonhomog->denominator(), first_step()))
      throw PoleError(*pole, "inhomogeneous term " + nonhomog->to_string());
}

Recurrence make_recurrence(std::vector<RationalFunction> coeffs, std::vector<Rational> initials,
                           Index offset, std::optional<RationalFunction> nonhomog,
                           std::string name) {
  Recurrence rec;
  rec.coeffs = std::move(coeffs);
  rec.initials = std::move(initials);
  rec.offset = offset;
  rec.nonhomog = std::move(nonhomog);
  rec.name = std::move(name);
  rec.validate();
  return rec;
}

const Rational& TermTable::at(Index n) const {
  if (!contains(n)) throw std::out_of_range("term a_" + std::to_string(n) + " not in table");
  return terms[static_cast<std::size_t>(n - offset)];
}

const Rational& QuotientTable::at(Index n) const {
  if (!contains(n)) throw std::out_of_range("quotient x_" + std::to_string(n) + " not in table");
  return quotients[static_cast<std::size_t>(n - first_index)];
}

TermTable compute_terms(const Recurrence& rec, std::size_t count) {
  const auto order = static_cast<std::size_t>(rec.order());
  if (count < order)
    throw RecurrenceError("need at least " + std::to_string(order) + " terms");
  TermTable tab{rec.offset, rec.initials};
  tab.terms.reserve(count);
  for (std::size_t k = order; k < count; ++k) {
    const Index n = rec.offset + static_cast<Index>(k);
    Rational value = rec.nonhomog ? rec.nonhomog->at(n) : Rational();
    for (std::size_t j = 0; j < order; ++j) {
      if (rec.coeffs[j].is_zero()) continue;
      value += rec.coeffs[j].at(n) * tab.terms[k - 1 - j];
    }
    tab.terms.push_back(std::move(value));
  }
  return tab;
}

QuotientTable quotient_sequence(const TermTable& tab) {
  const auto& a = tab.terms;
  std::size_t start = 0;
  while (start + 1 < a.size() && (a[start].is_zero() || a[start + 1].is_zero())) ++start;
  if (start + 1 >= a.size())
    throw RecurrenceError("quotient sequence undefined: no two consecutive nonzero terms");
  QuotientTable q;
  q.first_index = tab.offset + static_cast<Index>(start) + 1;
  q.skipped = static_cast<Index>(start);
  for (std::size_t i = start + 1; i < a.size(); ++i) {
    if (a[i].is_zero())
      throw RecurrenceError("zero term a_" + std::to_string(tab.offset + static_cast<Index>(i)) +
                            " after the quotient sequence has started");
    q.quotients.push_back(a[i] / a[i - 1]);
  }
  return q;
}

Recurrence homogenize(const Recurrence& rec) {
  if (rec.homogeneous()) throw RecurrenceError("recurrence is already homogeneous");
  if (rec.order() > 2) throw RecurrenceError("only order 1 and 2 inhomogeneous recurrences are supported");
  const RationalFunction& g = *rec.nonhomog;
  const Index lo = rec.first_step();
  if (g.is_zero()) throw RecurrenceError("inhomogeneous term is identically zero");
  if (auto root = first_integer_root(g.numerator(), lo))
    throw RecurrenceError("inhomogeneous term vanishes at n = " + std::to_string(*root));
  int sign = 0;
  switch (ratfunc_tail_sign(g, lo)) {
    case TailSign::positive: sign = 1; break;
    case TailSign::negative: sign = -1; break;
    default: throw RecurrenceError("inhomogeneous term changes sign on n >= " + std::to_string(lo));
  }

  const RationalFunction q = g / g.shifted(-1);
  const RationalFunction& r = rec.R();
  Recurrence out;
  if (rec.order() == 1) {
    out.coeffs = {r + q, -(r.shifted(-1) * q)};
  } else {
    const RationalFunction& s = rec.S();
    out.coeffs = {r + q, s - r.shifted(-1) * q, -(s.shifted(-1) * q)};
  }
  out.offset = rec.offset;
  out.initials = compute_terms(rec, rec.initials.size() + 1).terms;
  out.name = rec.name;
  out.eliminated_sign = sign;
  out.validate();
  return out;
}

Index quotient_recurrence_start(const Recurrence& rec, Index first_quotient) {
  return std::max(rec.first_step(), first_quotient + rec.order() - 1);
}

}  // namespace logbal
