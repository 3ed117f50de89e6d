#include <doctest.h>

#include "logbal/error.hpp"
#include "logbal/ratfunc.hpp"
#include "logbal/tail.hpp"

using namespace logbal;

namespace {
const Polynomial N = Polynomial::variable();
Polynomial c(long v) { return Polynomial::constant(v); }
}  // namespace

TEST_CASE("rational arithmetic is exact and normalized") {
  Rational a(6, -4);
  CHECK(a.num() == -3);
  CHECK(a.den() == 2);
  CHECK(a + Rational(3, 2) == 0);
  CHECK(Rational(1, 3) * 3 == 1);
  CHECK(Rational(7, 2).floor() == 3);
  CHECK(Rational(-7, 2).floor() == -4);
  CHECK(Rational(-7, 2).ceil() == -3);
  CHECK(Rational(1, 3) < Rational(1, 2));
  CHECK(Rational::parse("-14/4") == Rational(-7, 2));
  CHECK(Rational::parse("34").to_string() == "34");
  CHECK(Rational(7, 2).to_string() == "7/2");
  CHECK_THROWS_AS(Rational(1, 0), ArithmeticError);
  CHECK_THROWS_AS(Rational(1) / Rational(0), ArithmeticError);
  CHECK_THROWS(Rational::parse("1/2/3"));
}

TEST_CASE("rational: large values stay exact") {
  Rational x(1);
  for (int i = 0; i < 60; ++i) x *= Rational(10);
  CHECK((x + 1 - x) == 1);
  CHECK(x.to_string().size() == 61);
}

TEST_CASE("polynomial ring operations") {
  Polynomial p = N * N - c(1);
  CHECK(p.degree() == 2);
  CHECK(p(Rational(3)) == 8);
  CHECK((p - p).is_zero());
  auto [q, r] = p.divmod(N - c(1));
  CHECK(q == N + c(1));
  CHECK(r.is_zero());
  CHECK(Polynomial::gcd(p, N * N + c(2) * N + c(1)) == N + c(1));
  CHECK(p.shifted(1) == N * N + c(2) * N);
  CHECK((N + c(1)).pow(3) == N * N * N + c(3) * N * N + c(3) * N + c(1));
  CHECK(p.to_string() == "n^2 - 1");
}

TEST_CASE("rational functions cancel common factors") {
  RationalFunction f(N * N - c(1), N - c(1));
  CHECK(f.denominator().is_constant());
  CHECK(f.at(5) == 6);
  RationalFunction g(N, N + c(2));
  CHECK(g.at(2) == Rational(1, 2));
  CHECK(*g.limit_at_infinity() == 1);
  CHECK_FALSE(RationalFunction(N * N, N + c(1)).limit_at_infinity().has_value());
  CHECK_THROWS_AS(RationalFunction(c(1), N - c(3)).at(3), PoleError);
  CHECK_THROWS(RationalFunction(c(1), Polynomial{}));
}

TEST_CASE("forward difference matches pointwise differences") {
  RationalFunction f(c(2) * N + c(1), N + c(2));
  RationalFunction d = forward_diff(f);
  for (Index n = 0; n <= 100; ++n) CHECK(d.at(n) == f.at(n + 1) - f.at(n));
  RationalFunction g(c(3) * N - c(3), (N - c(4)) * (N + c(2)));
  RationalFunction dg = forward_diff(g);
  for (Index n = 0; n <= 100; ++n) {
    if (n == 3 || n == 4) continue;
    CHECK(dg.at(n) == g.at(n + 1) - g.at(n));
  }
}

TEST_CASE("weighted determinants") {
  RationalFunction f(c(2) * N + c(1), N + c(2));
  RationalFunction d = weighted_det(f, DetKind::delta);
  RationalFunction db = weighted_det(f, DetKind::delta_bar);
  for (Index n = 1; n <= 50; ++n) {
    CHECK(d.at(n) == Rational(n + 1) * f.at(n) - Rational(n) * f.at(n + 1));
    CHECK(db.at(n) == Rational(n + 1) * f.at(n) - Rational(n - 1) * f.at(n + 1));
  }
}

TEST_CASE("polynomial tail decisions") {
  CHECK(poly_tail_nonneg(N * N - c(4), 2).holds);
  auto bad = poly_tail_nonneg(N * N - c(4), 0);
  CHECK_FALSE(bad.holds);
  CHECK(*bad.fails_at == 0);
  CHECK_FALSE(poly_tail_positive(N * N - c(4), 2).holds);
  CHECK(poly_tail_positive(N * N - c(4), 3).holds);
  CHECK_FALSE(poly_tail_nonneg(c(-1) * N + c(100), 0).holds);
  CHECK(*poly_tail_nonneg(c(-1) * N + c(100), 0).fails_at == 101);
  CHECK(*poly_tail_start(N * N - c(10) * N, 0) == 10);
  CHECK(*poly_tail_start(N * N - c(10) * N, 0, true) == 11);
  // a dip between roots 3 and 5 is caught
  Polynomial dip = (N - c(3)) * (N - c(5));
  CHECK_FALSE(poly_tail_nonneg(dip, 0).holds);
  CHECK(*poly_tail_nonneg(dip, 0).fails_at == 4);
  CHECK(*first_integer_root(dip, 0) == 3);
  CHECK(*last_integer_root(dip, 0) == 5);
  CHECK(poly_tail_nonneg(Polynomial{}, 0).holds);
}

TEST_CASE("tail nonnegativity agrees with brute force") {
  const std::vector<Polynomial> ps = {
      N * N * N - c(30) * N * N + c(200) * N,
      c(10) * N * N - c(30) * N + c(80),
      (N - c(7)) * (N - c(7)),
      c(2) * N.pow(4) - c(50) * N.pow(3) + c(1),
  };
  for (const auto& p : ps) {
    for (Index n0 = 0; n0 < 40; ++n0) {
      bool brute = true;
      for (Index n = n0; n < 400; ++n)
        if (p(Rational(n)).sign() < 0) brute = false;
      CHECK(poly_tail_nonneg(p, n0).holds == brute);
    }
  }
}

TEST_CASE("rational function tail signs") {
  CHECK(ratfunc_tail_sign(RationalFunction(N, N + c(1)), 1) == TailSign::positive);
  CHECK(ratfunc_tail_sign(RationalFunction(N, N + c(1)), 0) == TailSign::nonnegative);
  CHECK(ratfunc_tail_sign(RationalFunction(c(-1), N + c(1)), 0) == TailSign::negative);
  CHECK(ratfunc_tail_sign(RationalFunction(N - c(3), c(1)), 0) == TailSign::varies);
  CHECK(ratfunc_tail_sign(RationalFunction(Rational(0)), 0) == TailSign::zero);
  CHECK_THROWS_AS(ratfunc_tail_sign(RationalFunction(c(1), N - c(5)), 0), PoleError);
  auto ev = eventual_sign(RationalFunction(N - c(3), N + c(1)), 0);
  CHECK(ev.sign == 1);
  CHECK(ev.from == 3);
  Polynomial cl = cleared_numerator(RationalFunction(N - c(3), c(-2) * N - c(2)), 0);
  CHECK(cl(Rational(10)).sign() < 0);
}

TEST_CASE("worked examples") {
  CHECK(Rational(1, 3) + Rational(1, 6) == Rational(1, 2));
  CHECK(poly_tail_nonneg(c(10) * N * N - c(30) * N + c(80), 1).holds);
  CHECK(poly_tail_nonneg(N * N - N - c(3), 3).holds);
  auto f = poly_tail_nonneg(N * N - N - c(3), 1);
  CHECK_FALSE(f.holds);
  CHECK(*f.fails_at == 1);

  CHECK(ratfunc_tail_sign(RationalFunction(-(N - c(1)).pow(3), N.pow(3)), 2) == TailSign::negative);
  CHECK(ratfunc_tail_sign(RationalFunction(c(9), (N + c(1)) * (N + c(2))), 1) == TailSign::positive);
  CHECK(ratfunc_tail_sign(RationalFunction(N - c(5), N + c(1)), 1) == TailSign::varies);

  CHECK(forward_diff(RationalFunction(c(7) * N - c(5), c(2) * N + c(2))) ==
        RationalFunction(c(6), (N + c(1)) * (N + c(2))));
  CHECK(forward_diff(RationalFunction(Rational(5))).is_zero());
  CHECK(forward_diff(RationalFunction(c(2) * N + c(1), N + c(2))) == RationalFunction(c(3), (N + c(2)) * (N + c(3))));
  CHECK(weighted_det(RationalFunction(c(2) * N + c(1), N + c(2)), DetKind::delta) ==
        RationalFunction(c(2) * N * N + c(4) * N + c(3), (N + c(2)) * (N + c(3))));
  CHECK(weighted_det(RationalFunction(-(N - c(2)), N + c(1)), DetKind::delta_bar) ==
        RationalFunction(c(5) - c(2) * N, N + c(2)));
  CHECK(weighted_det(RationalFunction(N + c(1)), DetKind::delta) == RationalFunction(Rational(1)));
}
