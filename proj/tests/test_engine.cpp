#include <doctest.h>

#include "logbal/catalog.hpp"
#include "logbal/error.hpp"
#include "logbal/recdsl.hpp"
#include "logbal/recurrence.hpp"

using namespace logbal;

TEST_CASE("terms of simple recurrences") {
  auto tab = compute_terms(parse_recurrence("a[n] = 2*a[n-1]; a[0]=1"), 4);
  CHECK(tab.terms == std::vector<Rational>{1, 2, 4, 8});
  auto fib = compute_terms(parse_recurrence("a[n] = a[n-1] + a[n-2]; a[0]=0; a[1]=1"), 11);
  CHECK(fib.at(10) == 55);
  auto shifted = compute_terms(parse_recurrence("a[n] = (n-1)*a[n-1]; a[2]=1"), 4);
  CHECK(shifted.offset == 2);
  CHECK(shifted.at(5) == 24);
  CHECK_THROWS_AS(shifted.at(1), std::out_of_range);
  CHECK(shifted.end() == 6);
}

TEST_CASE("order three and rational terms") {
  auto trib = compute_terms(parse_recurrence("a[n] = a[n-1] + a[n-2] + a[n-3]; a[0]=0; a[1]=0; a[2]=1"), 10);
  CHECK(trib.at(9) == 44);
  auto h = compute_terms(parse_recurrence("a[n] = a[n-1] + 1/n; a[0]=0"), 5);
  CHECK(h.at(4) == Rational(25, 12));
}

TEST_CASE("quotient sequence skips leading zeros") {
  auto fine = compute_terms(catalog_get("fine").recurrence, 8);
  CHECK(fine.at(1) == 0);
  auto q = quotient_sequence(fine);
  CHECK(q.first_index == 3);
  CHECK(q.skipped == 2);
  CHECK(q.at(3) == 2);
  CHECK(q.at(4) == Rational(6, 2));
  auto fib = compute_terms(parse_recurrence("a[n] = a[n-1] + a[n-2]; a[0]=0; a[1]=1"), 6);
  CHECK(quotient_sequence(fib).first_index == 2);
}

TEST_CASE("quotient sequence rejects late zeros") {
  auto tab = compute_terms(parse_recurrence("a[n] = (n-4)*a[n-1]; a[0]=1"), 8);
  CHECK_THROWS_AS(quotient_sequence(tab), RecurrenceError);
  CHECK_THROWS_AS(parse_recurrence("a[n] = 0*a[n-1]; a[0]=1"), RecurrenceError);
  auto zeros = compute_terms(parse_recurrence("a[n] = a[n-1]; a[0]=0"), 4);
  CHECK_THROWS_AS(quotient_sequence(zeros), RecurrenceError);
}

TEST_CASE("validation rejects poles inside the recurrence range") {
  CHECK_THROWS_AS(parse_recurrence("a[n] = 1/(n-5)*a[n-1]; a[0]=1"), PoleError);
  CHECK_NOTHROW(parse_recurrence("a[n] = 1/(n-5)*a[n-1]; a[5]=1"));
  CHECK_NOTHROW(parse_recurrence("a[n] = 1/(n-1)*a[n-1]; a[1]=1"));
}

TEST_CASE("homogenizing an order one recurrence") {
  Recurrence r = parse_recurrence("a[n] = n*a[n-1] + 1; a[0]=1");
  Recurrence h = homogenize(r);
  CHECK(h.homogeneous());
  CHECK(h.order() == 2);
  CHECK(h.offset == r.offset);
  CHECK(h.eliminated_sign == 1);
  auto a = compute_terms(r, 50), b = compute_terms(h, 50);
  CHECK(a.terms == b.terms);
}

TEST_CASE("homogenizing an order two recurrence") {
  Recurrence r = parse_recurrence("a[n] = a[n-1] + 2*a[n-2] - (n+1); a[0]=3; a[1]=5");
  Recurrence h = homogenize(r);
  CHECK(h.order() == 3);
  CHECK(h.eliminated_sign == -1);
  CHECK(compute_terms(r, 50).terms == compute_terms(h, 50).terms);
}

TEST_CASE("homogenize requires a sign-definite inhomogeneous term") {
  CHECK_THROWS_AS(homogenize(parse_recurrence("a[n] = a[n-1] + (n-3); a[0]=1")), RecurrenceError);
  CHECK_THROWS(homogenize(parse_recurrence("a[n] = a[n-1] + a[n-2] + a[n-3] + 1; a[0]=1; a[1]=1; a[2]=1")));
  CHECK_THROWS(homogenize(parse_recurrence("a[n] = 2*a[n-1]; a[0]=1")));
}

TEST_CASE("quotient recurrence start") {
  Recurrence m = catalog_get("motzkin").recurrence;
  CHECK(quotient_recurrence_start(m, 1) == 2);
  Recurrence f = catalog_get("fine").recurrence;
  CHECK(quotient_recurrence_start(f, 3) == 4);
}

TEST_CASE("worked examples") {
  auto m = compute_terms(catalog_get("motzkin").recurrence, 7);
  CHECK(m.terms == std::vector<Rational>{1, 1, 2, 4, 9, 21, 51});
  auto f = compute_terms(catalog_get("fine").recurrence, 5);
  CHECK(f.terms == std::vector<Rational>{1, 0, 1, 2, 6});
  auto fq = quotient_sequence(f);
  CHECK(fq.first_index == 3);
  CHECK(fq.quotients == std::vector<Rational>{2, 3});
  auto p = compute_terms(catalog_get("polyomino_dcc").recurrence, 3);
  CHECK(p.terms == std::vector<Rational>{1, 3, 13});

  auto aq = quotient_sequence(compute_terms(catalog_get("apery").recurrence, 6));
  CHECK(aq.at(1) == 5);
  CHECK(aq.at(2) == Rational(73, 5));
  CHECK(aq.at(3) == Rational(1445, 73));
  CHECK(quotient_sequence(compute_terms(catalog_get("franel3").recurrence, 4)).at(2) == 5);
  CHECK(quotient_sequence(TermTable{0, {1, 1, 1}}).quotients == std::vector<Rational>{1, 1});

  const RationalFunction n = RationalFunction::variable();
  Recurrence h = homogenize(parse_recurrence("a[n] = n*a[n-1] + 1; a[0]=1"));
  CHECK(h.R() == n + RationalFunction(1));
  CHECK(h.S() == RationalFunction(1) - n);
  Recurrence h2 = homogenize(parse_recurrence("a[n] = 2*a[n-1] + n*a[n-2] + 5; a[0]=1; a[1]=1"));
  CHECK(h2.R() == RationalFunction(3));
  CHECK(h2.S() == n - RationalFunction(2));
  CHECK(h2.T() == RationalFunction(1) - n);
}
