#include "logbal/ratfunc.hpp"

namespace logbal {

RationalFunction::RationalFunction(const Rational& c)
    : num_(Polynomial::constant(c)), den_(Polynomial::constant(1)) {
  normalize();
}

RationalFunction::RationalFunction(const Polynomial& p) : num_(p), den_(Polynomial::constant(1)) {
  normalize();
}

RationalFunction::RationalFunction(Polynomial num, Polynomial den)
    : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw ArithmeticError("rational function with zero denominator");
  normalize();
}

void RationalFunction::normalize() {
  if (num_.is_zero()) {
    den_ = Polynomial::constant(1);
    return;
  }
  if (!den_.is_constant()) {
    Polynomial g = Polynomial::gcd(num_, den_);
    if (g.degree() > 0) {
      num_ = num_.divmod(g).first;
      den_ = den_.divmod(g).first;
    }
  }
  // Scale both parts by one rational to make every coefficient an integer
  // with joint content 1 and the denominator leads positively.
  auto [cn, pn] = num_.primitive_part();
  auto [cd, pd] = den_.primitive_part();
  Rational ratio = cn / cd;
  if (pd.leading().sign() < 0) {
    pd = -pd;
    ratio = -ratio;
  }
  num_ = pn * Rational(ratio.num());
  den_ = pd * Rational(ratio.den());
}

Rational RationalFunction::operator()(const Rational& x) const {
  Rational d = den_(x);
  if (d.is_zero()) {
    if (x.is_integer()) throw PoleError(x.num().get_si(), "rational function " + to_string());
    throw ArithmeticError("rational function " + to_string() + " has a pole at " + x.to_string());
  }
  return num_(x) / d;
}

std::optional<Rational> RationalFunction::limit_at_infinity() const {
  if (num_.degree() > den_.degree()) return std::nullopt;
  if (num_.degree() < den_.degree()) return Rational(0);
  return num_.leading() / den_.leading();
}

RationalFunction& RationalFunction::operator+=(const RationalFunction& rhs) {
  if (den_ == rhs.den_) {
    num_ += rhs.num_;
  } else {
    num_ = num_ * rhs.den_ + rhs.num_ * den_;
    den_ = den_ * rhs.den_;
  }
  normalize();
  return *this;
}

RationalFunction& RationalFunction::operator-=(const RationalFunction& rhs) { return *this += -rhs; }

RationalFunction& RationalFunction::operator*=(const RationalFunction& rhs) {
  num_ = num_ * rhs.num_;
  den_ = den_ * rhs.den_;
  normalize();
  return *this;
}

RationalFunction& RationalFunction::operator/=(const RationalFunction& rhs) {
  if (rhs.is_zero()) throw ArithmeticError("division by the zero rational function");
  num_ = num_ * rhs.den_;
  den_ = den_ * rhs.num_;
  normalize();
  return *this;
}

RationalFunction RationalFunction::operator-() const {
  RationalFunction r = *this;
  r.num_ = -r.num_;
  return r;
}

RationalFunction RationalFunction::pow(unsigned exponent) const {
  RationalFunction r = *this;
  r.num_ = num_.pow(exponent);
  r.den_ = den_.pow(exponent);
  r.normalize();
  return r;
}

RationalFunction RationalFunction::shifted(Index shift) const {
  RationalFunction r = *this;
  r.num_ = num_.shifted(Rational(shift));
  r.den_ = den_.shifted(Rational(shift));
  r.normalize();
  return r;
}

std::string RationalFunction::to_string() const {
  if (den_ == Polynomial::constant(1)) return num_.to_string();
  return "(" + num_.to_string() + ")/(" + den_.to_string() + ")";
}

RationalFunction forward_diff(const RationalFunction& f) { return f.shifted(1) - f; }

RationalFunction weighted_det(const RationalFunction& f, DetKind kind) {
  const RationalFunction n = RationalFunction::variable();
  const RationalFunction lower = kind == DetKind::delta ? n : n - RationalFunction(1);
  return (n + RationalFunction(1)) * f - lower * f.shifted(1);
}

}  // namespace logbal
