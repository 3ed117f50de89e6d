#include <doctest.h>

#include "logbal/analysis.hpp"
#include "logbal/catalog.hpp"
#include "logbal/error.hpp"
#include "logbal/recdsl.hpp"

using namespace logbal;

namespace {
TermTable terms(const char* text, std::size_t count) { return compute_terms(parse_recurrence(text), count); }
TermTable table(std::vector<Rational> v, Index offset = 0) { return TermTable{offset, std::move(v)}; }
}  // namespace

TEST_CASE("classification of basic shapes") {
  auto geo = classify(terms("a[n] = 3*a[n-1]; a[0]=2", 20));
  CHECK(geo.verdict == LogBehavior::log_straight);
  CHECK_FALSE(geo.witness.has_value());
  CHECK(geo.first == 1);
  CHECK(geo.last == 18);

  auto fact = classify(terms("a[n] = n*a[n-1]; a[0]=1", 20));
  CHECK(fact.verdict == LogBehavior::log_convex);
  CHECK(*fact.witness == 1);

  auto binom = classify(table({1, 5, 10, 10, 5, 1}));
  CHECK(binom.verdict == LogBehavior::log_concave);

  auto fib = classify(terms("a[n] = a[n-1] + a[n-2]; a[0]=1; a[1]=1", 25));
  CHECK(fib.verdict == LogBehavior::log_fibonacci);
}

TEST_CASE("mixed sequences report where the pattern breaks") {
  auto c = classify(table({1, 2, 3, 5, 9, 20}));
  CHECK(c.verdict == LogBehavior::mixed);
  REQUIRE(c.witness.has_value());
  CHECK(*c.witness >= c.first);
  CHECK(*c.witness <= c.last);
  CHECK(to_string(c.verdict) == "mixed");
}

TEST_CASE("classification needs positive terms") {
  CHECK_THROWS_AS(classify(table({1, 2})), AnalysisError);
  CHECK_THROWS_AS(classify(table({1, 0, 2, 3})), AnalysisError);
  CHECK_THROWS_AS(classify(table({1, -1, 2, 3})), AnalysisError);
}

TEST_CASE("product inequalities for Motzkin numbers") {
  auto tab = compute_terms(catalog_get("motzkin").recurrence, 202);
  auto rep = check_prop1(tab, 60);
  CHECK(rep.part_b_applicable);
  CHECK(rep.part_a_from == 1);
  CHECK(rep.part_a_to == 200);
  CHECK(rep.clean());
}

TEST_CASE("product inequalities catch (n-1)!") {
  auto tab = compute_terms(catalog_get("factorial_shift_down").recurrence, 30);
  auto rep = check_prop1(tab, 10);
  CHECK_FALSE(rep.part_b_applicable);
  REQUIRE_FALSE(rep.part_a_violations.empty());
  CHECK(rep.part_a_violations.front().n == 3);
  const auto& v = rep.part_a_violations.front();
  CHECK(v.mid > v.rhs);
}

TEST_CASE("Apery numbers need a later start for the ratio inequalities") {
  auto tab = compute_terms(catalog_get("apery").recurrence, 80);
  auto all = check_prop1(tab, 20);
  REQUIRE(all.part_a_violations.size() == 1);
  CHECK(all.part_a_violations[0].n == 1);
  CHECK(check_prop1(tab, 20, 2).part_a_violations.empty());
  CHECK_FALSE(all.part_b_violations.empty());
}

TEST_CASE("part (b) needs enough terms") {
  auto tab = compute_terms(catalog_get("motzkin").recurrence, 10);
  CHECK_THROWS_AS(check_prop1(tab, 20), AnalysisError);
}

TEST_CASE("worked examples") {
  CHECK(classify(table({1, 1, 2, 3, 5, 8, 13})).verdict == LogBehavior::log_fibonacci);
  CHECK(classify(table({1, 2, 4, 8, 16})).verdict == LogBehavior::log_straight);
  CHECK(classify(compute_terms(catalog_get("motzkin").recurrence, 20)).verdict == LogBehavior::log_convex);
  CHECK(classify(table({1, 2, 3, 4, 5})).verdict == LogBehavior::log_concave);
  CHECK(check_prop1(compute_terms(catalog_get("motzkin").recurrence, 12), 10).clean());
  CHECK_FALSE(check_prop1(table({2, 3, 5, 9}), 2).part_b_applicable);
}
