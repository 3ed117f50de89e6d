#include <doctest.h>

#include "logbal/catalog.hpp"
#include "logbal/certify.hpp"
#include "logbal/recdsl.hpp"

using namespace logbal;

namespace {

QuotientBounds constant(Rational m, Rational M, Index n0) {
  return {BoundShape::constant, {Rational(0), m}, {Rational(0), M}, n0};
}

void check_sound(const Recurrence& rec, const Certificate& c) {
  CAPTURE(to_string(c.property));
  CHECK_FALSE(first_defining_violation(rec, c.property, c.holds_from, c.holds_from + 300).has_value());
  for (const auto& t : c.tail_inequalities) CHECK(poly_tail_nonneg(t.polynomial, t.from).holds);
  for (const auto& t : c.bounds_proof) CHECK(poly_tail_nonneg(t.polynomial, t.from).holds);
  for (const auto& b : c.base_cases) CHECK(b.holds());
  CHECK(c.holds_from <= c.n_star);
}

}  // namespace

TEST_CASE("verify accepts the Motzkin bounds and rejects a wrong envelope") {
  const Recurrence rec = catalog_get("motzkin").recurrence;
  auto ok = verify_bounds(rec, constant(2, Rational(7, 2), 2));
  REQUIRE(std::holds_alternative<VerifiedBounds>(ok));
  const auto& vb = std::get<VerifiedBounds>(ok);
  CHECK(vb.step_from >= 2);
  for (const auto& b : vb.base_cases) CHECK(b.holds());

  auto low = verify_bounds(rec, constant(Rational(5, 2), Rational(7, 2), 2));
  REQUIRE(std::holds_alternative<Failure>(low));
  CHECK(std::get<Failure>(low).reason == "base_case");
  CHECK(*std::get<Failure>(low).witness == 2);

  auto tight = verify_bounds(rec, constant(2, Rational(5, 2), 2));
  CHECK(std::holds_alternative<Failure>(tight));

  auto inverted = verify_bounds(rec, constant(4, 3, 2));
  REQUIRE(std::holds_alternative<Failure>(inverted));
  CHECK(std::get<Failure>(inverted).reason == "inverted");
}

TEST_CASE("verified bounds contain the computed quotients") {
  for (const char* name : {"motzkin", "schroeder", "franel3", "polyomino_dcc", "apery"}) {
    CAPTURE(name);
    const CatalogEntry e = catalog_get(name);
    auto out = verify_bounds(e.recurrence, *e.expected_bounds);
    REQUIRE(std::holds_alternative<VerifiedBounds>(out));
    const auto& b = *e.expected_bounds;
    const auto q = quotient_sequence(compute_terms(e.recurrence, static_cast<std::size_t>(b.n0) + 520));
    for (Index n = b.n0; n <= b.n0 + 500; ++n) {
      CHECK(b.lower.at(n) <= q.at(n));
      CHECK(q.at(n) <= b.upper.at(n));
    }
  }
}

TEST_CASE("proposed bounds for Motzkin numbers verify") {
  const Recurrence rec = catalog_get("motzkin").recurrence;
  QuotientBounds b = propose_bounds(rec);
  CHECK(b.shape == BoundShape::constant);
  CHECK(b.lower.intercept <= 2);
  CHECK(b.upper.intercept >= 3);
  CHECK(std::holds_alternative<VerifiedBounds>(verify_bounds(rec, b)));
}

TEST_CASE("polyomino quotients get affine bounds") {
  QuotientBounds b = propose_bounds(catalog_get("polyomino_dcc").recurrence);
  CHECK(b.shape == BoundShape::affine);
  CHECK(b.lower.slope == 1);
}

TEST_CASE("order one recurrences") {
  const Recurrence up = catalog_get("factorial_shift_up").recurrence;
  auto c = certify_order1(up, Property::log_balanced);
  REQUIRE(std::holds_alternative<Certificate>(c));
  CHECK(std::get<Certificate>(c).method == Method::order1_direct);
  CHECK_FALSE(std::get<Certificate>(c).bounds.has_value());
  check_sound(up, std::get<Certificate>(c));

  auto down = certify_order1(catalog_get("factorial_shift_down").recurrence, Property::log_balanced);
  REQUIRE(std::holds_alternative<Failure>(down));
  CHECK(std::get<Failure>(down).reason == "tail");

  auto dec = certify_order1(parse_recurrence("a[n] = (n+2)/(n+1)*a[n-1]; a[0]=1"), Property::log_convex);
  CHECK(std::holds_alternative<Failure>(dec));
  auto inc = certify_order1(parse_recurrence("a[n] = (n+1)/(n+2)*a[n-1]; a[0]=1"), Property::log_convex);
  CHECK(std::holds_alternative<Certificate>(inc));
}

TEST_CASE("pipeline on the balanced catalog entries") {
  for (const auto& name : catalog_all_names()) {
    const CatalogEntry e = catalog_get(name);
    if (e.expected_property != ExpectedProperty::log_balanced) continue;
    CAPTURE(name);
    const Report rep = certify_pipeline(e.recurrence);
    CHECK(rep.verdict == Verdict::log_balanced);
    for (const auto& c : rep.certificates) check_sound(rep.analysed, c);
  }
}

TEST_CASE("pipeline reports concrete counterexamples") {
  for (const char* name : {"factorial_squared", "factorial_shift_down", "sum_factorials"}) {
    CAPTURE(name);
    const Report rep = certify_pipeline(catalog_get(name).recurrence);
    CHECK_FALSE(rep.certified(Property::log_balanced));
    auto it = std::find_if(rep.failures.begin(), rep.failures.end(),
                           [](const Failure& f) { return f.reason == "counterexample"; });
    REQUIRE(it != rep.failures.end());
    REQUIRE(it->witness.has_value());
    CHECK(first_defining_violation(rep.analysed, Property::log_balanced, *it->witness, *it->witness) == it->witness);
  }
}

TEST_CASE("three-term recurrences") {
  const Recurrence rec = parse_recurrence("a[n] = n*a[n-1] + a[n-2] + a[n-3]; a[0]=1; a[1]=1; a[2]=2");
  const Report rep = certify_pipeline(rec);
  CHECK(rep.verdict == Verdict::log_balanced);
  REQUIRE(rep.find(Property::log_convex));
  CHECK(rep.find(Property::log_convex)->method == Method::three_term_convex);
  CHECK(rep.find(Property::log_balanced)->method == Method::three_term_balanced);
  for (const auto& c : rep.certificates) check_sound(rec, c);
}

TEST_CASE("inhomogeneous input is homogenized first") {
  const Report rep = certify_pipeline(parse_recurrence("a[n] = (n+1)*a[n-1] + 1; a[0]=1"));
  CHECK(rep.homogenized);
  CHECK(rep.analysed.order() == 2);
  CHECK(rep.verdict == Verdict::log_balanced);
  for (const auto& c : rep.certificates) check_sound(rep.analysed, c);
}

TEST_CASE("overrides are used as given") {
  const Recurrence rec = catalog_get("motzkin").recurrence;
  CertifyOptions opts;
  opts.bounds_override = constant(2, Rational(7, 2), 2);
  Report rep = certify_pipeline(rec, opts);
  REQUIRE(rep.find(Property::log_balanced));
  CHECK(*rep.find(Property::log_balanced)->bounds == *opts.bounds_override);

  opts.bounds_override = constant(Rational(5, 2), Rational(7, 2), 2);
  rep = certify_pipeline(rec, opts);
  CHECK(rep.verdict == Verdict::not_certified);
  CHECK(rep.failures.front().stage == "bounds");
}

TEST_CASE("failures are not repeated") {
  const Report rep = certify_pipeline(parse_recurrence("a[n] = a[n-1] + 2*a[n-2] + 1; a[0]=1; a[1]=2"));
  for (std::size_t i = 0; i < rep.failures.size(); ++i)
    for (std::size_t j = i + 1; j < rep.failures.size(); ++j)
      CHECK_FALSE((rep.failures[i].reason == rep.failures[j].reason && rep.failures[i].detail == rep.failures[j].detail));
}

TEST_CASE("input problems become failures") {
  const Report rep = certify_pipeline(parse_recurrence("a[n] = -2*a[n-1]; a[0]=1"));
  CHECK(rep.verdict == Verdict::not_certified);
  REQUIRE_FALSE(rep.failures.empty());
}

TEST_CASE("worked examples") {
  const Recurrence motzkin = catalog_get("motzkin").recurrence;
  CHECK(propose_bounds(motzkin, 30) == constant(2, Rational(7, 2), 2));
  CHECK(propose_bounds(catalog_get("schroeder").recurrence, 30) == constant(3, 6, 2));
  const QuotientBounds poly = propose_bounds(catalog_get("polyomino_dcc").recurrence, 30);
  CHECK(poly == QuotientBounds{BoundShape::affine, {1, 1}, {1, 2}, 2});

  CHECK(std::holds_alternative<VerifiedBounds>(verify_bounds(catalog_get("franel3").recurrence, constant(5, 9, 3))));
  CHECK(std::holds_alternative<VerifiedBounds>(verify_bounds(catalog_get("baxter").recurrence, constant(7, 9, 47))));
  auto bad = verify_bounds(motzkin, constant(3, Rational(7, 2), 2));
  REQUIRE(std::holds_alternative<Failure>(bad));
  CHECK(std::get<Failure>(bad).reason == "base_case");

  const Report m = certify_pipeline(motzkin);
  CHECK(m.find(Property::log_balanced)->method == Method::prop4);
  CHECK(m.find(Property::log_balanced)->holds_from == 1);
  CHECK(*m.find(Property::log_balanced)->delta_nonneg_from == 3);
  const Report s = certify_pipeline(catalog_get("schroeder").recurrence);
  CHECK(s.find(Property::log_balanced)->method == Method::prop5);
  const Report f = certify_pipeline(catalog_get("fine").recurrence);
  CHECK(*f.find(Property::log_balanced)->reindexed_from == 2);
}
