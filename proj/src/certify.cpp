#include "logbal/certify.hpp"

#include <algorithm>
#include <functional>

namespace logbal {

std::string_view to_string(BoundShape s) { return s == BoundShape::constant ? "constant" : "affine"; }

std::string_view to_string(Property p) { return p == Property::log_convex ? "log_convex" : "log_balanced"; }

std::string_view to_string(Method m) {
  switch (m) {
    case Method::prop2: return "prop2";
    case Method::prop3: return "prop3";
    case Method::prop4: return "prop4";
    case Method::prop5: return "prop5";
    case Method::three_term_convex: return "three_term_convex";
    case Method::three_term_balanced: return "three_term_balanced";
    case Method::order1_direct: return "order1_direct";
  }
  return "";
}

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::log_balanced: return "log_balanced";
    case Verdict::log_convex: return "log_convex";
    case Verdict::not_certified: return "not_certified";
  }
  return "";
}

QuotientBounds QuotientBounds::constant(Rational m, Rational M, Index n0) {
  return {BoundShape::constant, {0, std::move(m)}, {0, std::move(M)}, n0};
}

QuotientBounds QuotientBounds::affine(Affine lower, Affine upper, Index n0) {
  return {BoundShape::affine, std::move(lower), std::move(upper), n0};
}

std::string QuotientBounds::to_string() const {
  if (shape == BoundShape::constant)
    return lower.intercept.to_string() + " <= x_n <= " + upper.intercept.to_string() + " for n >= " +
           std::to_string(n0);
  return lower.poly().to_string() + " <= x_n <= " + upper.poly().to_string() + " for n >= " + std::to_string(n0);
}

const Certificate* Report::find(Property p) const {
  for (const auto& c : certificates)
    if (c.property == p) return &c;
  return nullptr;
}

namespace {

const RationalFunction kN = RationalFunction::variable();

/// Lazily extended exact quotient table.
class Quotients {
 public:
  explicit Quotients(const Recurrence& rec, Index upto = 64) : rec_(rec) { extend(upto); }

  Index first() const { return q_.first_index; }

  const Rational& x(Index k) {
    if (k >= q_.end()) extend(std::max(k + 1, 2 * q_.end()));
    return q_.at(k);
  }

  const TermTable& terms() const { return tab_; }

 private:
  void extend(Index end_index) {
    const Index count = std::max<Index>(end_index - rec_.offset, rec_.order());
    tab_ = compute_terms(rec_, static_cast<std::size_t>(count));
    q_ = quotient_sequence(tab_);
  }

  const Recurrence& rec_;
  TermTable tab_;
  QuotientTable q_;
};

bool convex_at(Quotients& xs, Index k) {
  const Rational& a = xs.x(k);
  return a.sign() > 0 && a <= xs.x(k + 1);
}

bool balanced_at(Quotients& xs, Index k) {
  if (k < 1) return false;
  const Rational& a = xs.x(k);
  return a.sign() > 0 && xs.x(k + 1) <= Rational(k + 1, k) * a;
}

Failure make_failure(std::string stage, std::string reason, std::string detail, std::optional<Index> witness = {},
                     std::vector<std::pair<std::string, Rational>> values = {}) {
  return Failure{std::move(stage), std::move(reason), std::move(detail), witness, std::move(values)};
}

struct Condition {
  std::string description;
  RationalFunction expr;
};

struct Discharged {
  Index start = 0;
  std::vector<TailInequality> tails;
};

/// Proves every condition nonnegative on a tail starting at or after valid_from.
Outcome<Discharged> discharge(const std::vector<Condition>& conds, Index valid_from, const std::string& stage) {
  Discharged out;
  out.start = valid_from;
  for (const auto& c : conds) {
    Index s = valid_from;
    if (auto pole = last_integer_root(c.expr.denominator(), valid_from)) s = *pole + 1;
    const Polynomial poly = cleared_numerator(c.expr, s);
    auto start = poly_tail_start(poly, s);
    if (!start) {
      const auto bad = poly_tail_nonneg(poly, s).fails_at;
      std::vector<std::pair<std::string, Rational>> values;
      if (bad) values.emplace_back("condition", c.expr.at(*bad));
      return make_failure(stage, "tail",
                          c.description + " is eventually negative: " + c.expr.to_string() + " (cleared: " +
                              poly.to_string() + ")",
                          bad, std::move(values));
    }
    out.start = std::max(out.start, *start);
    out.tails.push_back({c.description, poly, *start, c.expr.to_string()});
  }
  return out;
}

/// Bound minimising coeff * x over [lower, upper] once the sign of coeff has settled.
struct Choice {
  RationalFunction bound;
  Index from;
};

Choice minimising(const RationalFunction& coeff, const RationalFunction& lower, const RationalFunction& upper,
                  Index lo) {
  EventualSign s = eventual_sign(coeff, lo);
  return {s.sign >= 0 ? lower : upper, s.from};
}

Choice maximising(const RationalFunction& coeff, const RationalFunction& lower, const RationalFunction& upper,
                  Index lo) {
  EventualSign s = eventual_sign(coeff, lo);
  return {s.sign >= 0 ? upper : lower, s.from};
}

/// Smallest p >= first quotient with x_k > 0 for every k in [p, n0).
Index positive_from(Quotients& xs, Index n0) {
  Index p = n0;
  while (p - 1 >= xs.first() && xs.x(p - 1).sign() > 0) --p;
  return p;
}

Rational floor_half(const Rational& x) { return Rational((x * Rational(2)).floor(), Integer(2)); }
Rational ceil_half(const Rational& x) { return Rational((x * Rational(2)).ceil(), Integer(2)); }

struct Route {
  std::string name;
  std::vector<Condition> conds;
  Index valid_from;
};

/// Tries each route and keeps the one with the earliest tail start.
Outcome<Discharged> best_route(const std::vector<Route>& routes, const std::string& stage) {
  std::optional<Discharged> best;
  std::optional<Failure> first_failure;
  for (const auto& r : routes) {
    auto d = discharge(r.conds, r.valid_from, stage);
    if (auto* ok = std::get_if<Discharged>(&d)) {
      if (!best || ok->start < best->start) best = std::move(*ok);
    } else if (!first_failure) {
      first_failure = std::get<Failure>(std::move(d));
    }
  }
  if (best) return *best;
  return *first_failure;
}

/// Indices proven by exact checks below the induction start.
Index scan_down(const std::function<bool(Index)>& pred, Index from, Index floor) {
  Index h = from;
  while (h - 1 >= floor && pred(h - 1)) --h;
  return h;
}

}  // namespace

// ---------------------------------------------------------------------------
// Bounds

namespace {

QuotientBounds propose_from(const Recurrence& rec, std::optional<Index> from, Index probe_window) {
  Quotients xs(rec);
  const Index q0 = xs.first();
  const Index start = from.value_or(quotient_recurrence_start(rec, q0));
  if (probe_window < 5) throw AnalysisError("probe window must contain at least 5 quotients");
  const Index last = start + probe_window - 1;
  std::vector<Rational> win;
  for (Index k = start; k <= last; ++k) {
    if (xs.x(k).sign() <= 0)
      throw AnalysisError("quotient x_" + std::to_string(k) + " = " + xs.x(k).to_string() + " is not positive");
    win.push_back(xs.x(k));
  }

  const Index mid = start + probe_window / 2;
  const Rational last_diff = xs.x(last) - xs.x(last - 1);
  const Integer alpha = (last_diff + Rational(1, 2)).floor();
  const Rational drift = xs.x(last) - xs.x(mid) - Rational(alpha) * Rational(last - mid);
  const bool linear = alpha >= 1 && drift.abs() * Rational(4) <= Rational(last - mid);

  QuotientBounds b;
  std::function<bool(Index)> fits;
  if (linear) {
    Rational lo_y, hi_y;
    for (Index k = start; k <= last; ++k) {
      Rational y = xs.x(k) - Rational(alpha) * Rational(k);
      if (k == start || y < lo_y) lo_y = y;
      if (k == start || y > hi_y) hi_y = y;
    }
    Integer c1 = lo_y.floor(), c2 = hi_y.ceil();
    if (c2 < c1 + 1) c2 = c1 + 1;
    b = QuotientBounds::affine({Rational(alpha), Rational(c1)}, {Rational(alpha), Rational(c2)}, start);
    fits = [&](Index k) {
      const Rational& x = xs.x(k);
      return b.lower.at(k).sign() > 0 && b.lower.at(k) <= x && x <= b.upper.at(k);
    };
  } else {
    Rational lo = *std::min_element(win.begin(), win.end());
    Rational hi = *std::max_element(win.begin(), win.end());
    Rational m = floor_half(lo);
    if (m.sign() <= 0) m = lo / Rational(2);

    // Images of the bound under the quotient map on the window and at infinity.
    std::optional<RationalFunction> image;
    if (rec.order() == 1) {
      image = rec.R();
    } else {
      const EventualSign ss = eventual_sign(rec.S(), start);
      const EventualSign ts = rec.order() == 3 ? eventual_sign(rec.T(), start) : EventualSign{0, start};
      const RationalFunction mm(m);
      if (ss.sign >= 0 && ts.sign >= 0) {
        RationalFunction f = rec.R() + rec.S() / mm;
        if (rec.order() == 3) f += rec.T() / (mm * mm);
        image = f;
      } else if (ss.sign <= 0 && ts.sign <= 0) {
        image = rec.R();
      }
    }
    if (image) {
      for (Index k = start; k <= last; ++k) {
        if (first_integer_root(image->denominator(), k) == k) continue;
        hi = std::max(hi, image->at(k));
      }
      if (auto lim = image->limit_at_infinity()) hi = std::max(hi, *lim);
    }
    Rational M = ceil_half(hi);
    if (M <= m) M = m + Rational(1, 2);
    b = QuotientBounds::constant(m, M, start);
    fits = [&](Index k) {
      const Rational& x = xs.x(k);
      return b.lower.intercept <= x && x <= b.upper.intercept;
    };
  }
  while (b.n0 - 1 >= q0 && fits(b.n0 - 1)) --b.n0;
  return b;
}

}  // namespace

QuotientBounds propose_bounds(const Recurrence& rec, Index probe_window) {
  return propose_from(rec, std::nullopt, probe_window);
}

Outcome<VerifiedBounds> verify_bounds(const Recurrence& rec, const QuotientBounds& b) {
  const std::string stage = "bounds";
  if (!rec.homogeneous()) return make_failure(stage, "inhomogeneous", "homogenize the recurrence first");
  Quotients xs(rec, b.n0 + 8);
  const Index q0 = xs.first();
  if (b.n0 < q0)
    return make_failure(stage, "before_first_quotient",
                        "bounds start at n0 = " + std::to_string(b.n0) + " but x_n is defined only from n = " +
                            std::to_string(q0),
                        b.n0);
  if (b.lower.slope.sign() < 0 || b.lower.at(b.n0).sign() <= 0)
    return make_failure(stage, "nonpositive_lower", "the lower bound must be positive and nondecreasing from n0",
                        b.n0, {{"m(n0)", b.lower.at(b.n0)}});
  if (auto bad = poly_tail_nonneg(b.upper.poly() - b.lower.poly(), b.n0).fails_at)
    return make_failure(stage, "inverted", "upper bound below lower bound", *bad,
                        {{"m", b.lower.at(*bad)}, {"M", b.upper.at(*bad)}});

  const Index qrec = quotient_recurrence_start(rec, q0);
  const RationalFunction m = b.lower.fn(), M = b.upper.fn();
  const RationalFunction m1 = m.shifted(-1), M1 = M.shifted(-1), m2 = m.shifted(-2), M2 = M.shifted(-2);
  Index lo = std::max(qrec, b.n0 + rec.order() - 1);
  RationalFunction lower_image, upper_image;

  if (rec.order() == 1) {
    lower_image = upper_image = rec.R();
  } else if (rec.order() == 2) {
    const EventualSign s = eventual_sign(rec.S(), lo);
    lo = std::max(lo, s.from);
    if (s.sign >= 0) {
      lower_image = rec.R() + rec.S() / M1;
      upper_image = rec.R() + rec.S() / m1;
    } else {
      lower_image = rec.R() + rec.S() / m1;
      upper_image = rec.R() + rec.S() / M1;
    }
  } else {
    const EventualSign s = eventual_sign(rec.S(), lo), t = eventual_sign(rec.T(), lo);
    lo = std::max({lo, s.from, t.from});
    if (s.sign >= 0 && t.sign >= 0) {
      lower_image = rec.R() + rec.S() / M1 + rec.T() / (M1 * M2);
      upper_image = rec.R() + rec.S() / m1 + rec.T() / (m1 * m2);
    } else if (s.sign <= 0 && t.sign <= 0) {
      lower_image = rec.R() + rec.S() / m1 + rec.T() / (m1 * m2);
      upper_image = rec.R() + rec.S() / M1 + rec.T() / (M1 * M2);
    } else {
      return make_failure(stage, "mixed_sign_coefficient",
                          "S and T have opposite eventual signs; the quotient map is not monotone");
    }
  }

  auto outside = [&](Index k) -> std::optional<Failure> {
    const Rational& x = xs.x(k);
    if (b.lower.at(k) <= x && x <= b.upper.at(k)) return std::nullopt;
    return make_failure(stage, "base_case",
                        "x_" + std::to_string(k) + " = " + x.to_string() + " lies outside [" +
                            b.lower.at(k).to_string() + ", " + b.upper.at(k).to_string() + "]",
                        k, {{"x", x}, {"m", b.lower.at(k)}, {"M", b.upper.at(k)}});
  };
  for (Index k = b.n0; k < lo; ++k)
    if (auto f = outside(k)) return std::move(*f);

  auto d = discharge({{"lower bound step: image of the bounds >= m(n)", lower_image - m},
                      {"upper bound step: image of the bounds <= M(n)", M - upper_image}},
                     lo, stage);
  if (auto* f = std::get_if<Failure>(&d)) return std::move(*f);
  auto& ok = std::get<Discharged>(d);

  VerifiedBounds vb{b, ok.start, std::move(ok.tails), {}};
  for (Index k = b.n0; k < vb.step_from; ++k) {
    const Rational& x = xs.x(k);
    vb.base_cases.push_back({k, "lower_bound", b.lower.at(k), x, {}});
    vb.base_cases.push_back({k, "upper_bound", x, b.upper.at(k), {}});
    if (auto f = outside(k)) return std::move(*f);
  }
  return vb;
}

// ---------------------------------------------------------------------------
// Order 1

Outcome<Certificate> certify_order1(const Recurrence& rec, Property property, Index max_base) {
  const std::string stage(to_string(property));
  if (rec.order() != 1 || !rec.homogeneous())
    return make_failure(stage, "unsupported", "direct certification needs a homogeneous order-1 recurrence");
  Quotients xs(rec, std::max<Index>(max_base, 8) + 4);
  const Index q0 = quotient_recurrence_start(rec, xs.first());
  const RationalFunction& R = rec.R();

  Certificate cert;
  cert.property = property;
  cert.method = Method::order1_direct;

  const Index lo = std::max<Index>(q0, 1);
  Index r_from = lo;
  if (auto pole = last_integer_root(R.denominator(), lo)) r_from = *pole + 1;
  auto positive = poly_tail_start(cleared_numerator(R, r_from), r_from, true);
  if (!positive) return make_failure(stage, "tail", "R(n) = " + R.to_string() + " is eventually nonpositive");

  std::vector<Condition> conds{{"forward difference of R", forward_diff(R)}};
  if (property == Property::log_balanced)
    conds.push_back({"weighted determinant delta of R", weighted_det(R, DetKind::delta)});
  auto d = discharge(conds, std::max(lo, *positive), stage);
  if (auto* f = std::get_if<Failure>(&d)) return std::move(*f);
  auto& ok = std::get<Discharged>(d);
  cert.tail_inequalities = ok.tails;
  cert.n_star = ok.start;

  auto pred = [&](Index k) {
    return convex_at(xs, k) && (property == Property::log_convex || balanced_at(xs, k));
  };
  cert.holds_from = scan_down(pred, cert.n_star, property == Property::log_convex ? q0 : std::max<Index>(q0, 1));
  for (Index k = cert.holds_from; k < cert.n_star; ++k) {
    cert.base_cases.push_back({k, "convex", xs.x(k), xs.x(k + 1), {}});
    if (property == Property::log_balanced)
      cert.base_cases.push_back({k, "balanced", xs.x(k + 1), Rational(k + 1, k) * xs.x(k), {}});
  }
  if (property == Property::log_balanced) {
    auto ev = eventual_sign(weighted_det(R, DetKind::delta), std::max<Index>(1, rec.offset));
    if (ev.sign >= 0) cert.delta_nonneg_from = ev.from;
  }
  return cert;
}

// ---------------------------------------------------------------------------
// Log-convexity

Outcome<Certificate> certify_log_convex(const Recurrence& rec, const VerifiedBounds& vb, Index max_base) {
  const std::string stage = "log_convex";
  if (rec.order() == 1) return certify_order1(rec, Property::log_convex, max_base);
  Quotients xs(rec, std::max(max_base, vb.step_from) + 8);
  const QuotientBounds& b = vb.bounds;
  const Index q0 = xs.first();
  const Index qrec = quotient_recurrence_start(rec, q0);
  const Index pos = positive_from(xs, b.n0);
  const RationalFunction m = b.lower.fn(), M = b.upper.fn();
  const Index lo = std::max<Index>(qrec, 1);

  const RationalFunction& R = rec.R();
  const RationalFunction& S = rec.S();
  const RationalFunction dR = forward_diff(R), dS = forward_diff(S);

  Certificate cert;
  cert.property = Property::log_convex;
  cert.bounds = b;
  cert.bounds_proof = vb.proof;
  cert.base_cases = vb.base_cases;
  std::vector<Route> routes;
  int lookback = 1;

  if (rec.order() == 2) {
    const EventualSign s = eventual_sign(S, lo);
    if (s.sign <= 0) {
      // P(n-1) and dR(n) x_{n-1} + dS(n) >= 0 give P(n).
      cert.method = Method::prop2;
      Choice u = minimising(dR, m, M, lo);
      routes.push_back({"bounds",
                        {{"forward differences with adverse x_{n-1}", dR * u.bound.shifted(-1) + dS}},
                        std::max({qrec, s.from, b.n0 + 1, u.from + 1})});
      if (eventual_sign(dR, lo).sign >= 0)
        routes.push_back({"positivity",
                          {{"forward difference of R", dR}, {"forward difference of S", dS}},
                          std::max({qrec, s.from, pos + 1})});
    } else {
      // P(n-2) and x_{n-1}^2 [dR(n) x_n + dS(n)] >= S(n) [dR(n-1) x_{n-1} + dS(n-1)] give P(n).
      cert.method = Method::prop3;
      lookback = 2;
      Choice xn = minimising(dR, m, M, lo);
      const RationalFunction g = dR * xn.bound + dS;
      Choice xl = minimising(g, m, M, lo);
      const RationalFunction lhs = xl.bound.shifted(-1) * xl.bound.shifted(-1) * g;
      Choice xr = maximising(dR, m, M, lo);
      const RationalFunction rhs = S * (dR.shifted(-1) * xr.bound.shifted(-1) + dS.shifted(-1));
      routes.push_back({"bounds",
                        {{"three-index convexity condition with adverse bounds", lhs - rhs}},
                        std::max({qrec + 1, b.n0 + 1, pos + 2, s.from + 1, xn.from, xl.from, xr.from + 1})});
    }
  } else {
    const RationalFunction& T = rec.T();
    const RationalFunction dT = forward_diff(T);
    const EventualSign s = eventual_sign(S, lo), t = eventual_sign(T, lo);
    const EventualSign ds = eventual_sign(dS, lo), dt = eventual_sign(dT, lo);
    if (s.sign < 0 || t.sign < 0 || ds.sign < 0 || dt.sign < 0)
      return make_failure(stage, "unsupported_sign_pattern",
                          "order-3 convexity needs S, T and their forward differences eventually nonnegative");
    cert.method = Method::three_term_convex;
    lookback = 4;
    const RationalFunction m1 = m.shifted(-1), m2 = m.shifted(-2), m3 = m.shifted(-3);
    Choice lead = minimising(dR, m, M, lo);
    const RationalFunction lead_bound = lead.bound == m ? m * m1 * m2 : M * M.shifted(-1) * M.shifted(-2);
    const RationalFunction lhs = lead_bound * dR;
    const RationalFunction a_max = dR.shifted(-1) + dS.shifted(-1) / m1 + dT.shifted(-1) / (m1 * m2);
    const RationalFunction b_max = dR.shifted(-2) + dS.shifted(-2) / m2 + dT.shifted(-2) / (m2 * m3);
    Choice v = maximising(a_max, m, M, lo);
    const RationalFunction first = (v.bound.shifted(-2) * S + T) * a_max;
    routes.push_back({"bounds",
                      {{"three-term convexity condition with adverse bounds", lhs - first - T * b_max}},
                      std::max({qrec + 2, b.n0 + 3, pos + 4, s.from + 2, t.from + 2, ds.from + 2, dt.from + 2,
                                lead.from, v.from})});
  }

  auto d = best_route(routes, stage);
  if (auto* f = std::get_if<Failure>(&d)) return std::move(*f);
  auto& ok = std::get<Discharged>(d);
  cert.tail_inequalities = ok.tails;

  // Seed: the lookback window below the induction start must hold exactly.
  std::optional<Index> seed;
  for (Index n = std::max(ok.start, q0 + lookback); n <= std::max(max_base, ok.start); ++n) {
    bool all = true;
    for (Index k = n - lookback; k < n && all; ++k) all = convex_at(xs, k);
    if (all) {
      seed = n;
      break;
    }
    if (n >= max_base) break;
  }
  if (!seed) {
    Index w = ok.start;
    while (w < max_base && convex_at(xs, w)) ++w;
    return make_failure(stage, "seed",
                        "no index N in [" + std::to_string(ok.start) + ", " + std::to_string(max_base) +
                            "] has x_k <= x_{k+1} for the " + std::to_string(lookback) + " indices below it",
                        w, {{"x_n", xs.x(w)}, {"x_{n+1}", xs.x(w + 1)}});
  }
  cert.n_star = *seed;
  cert.holds_from = scan_down([&](Index k) { return convex_at(xs, k); }, cert.n_star, q0);
  for (Index k = cert.holds_from; k < cert.n_star; ++k)
    cert.base_cases.push_back({k, "convex", xs.x(k), xs.x(k + 1), {}});
  return cert;
}

// ---------------------------------------------------------------------------
// Log-balancedness

Outcome<Certificate> certify_log_balanced(const Recurrence& rec, const VerifiedBounds& vb, const Certificate& convex,
                                          Index max_base) {
  const std::string stage = "log_balanced";
  if (convex.property != Property::log_convex)
    return make_failure(stage, "no_convexity_cover", "a log-convexity certificate is required");
  if (rec.order() == 1) return certify_order1(rec, Property::log_balanced, max_base);
  Quotients xs(rec, std::max(max_base, vb.step_from) + 8);
  const QuotientBounds& b = vb.bounds;
  const Index q0 = xs.first();
  const Index qrec = quotient_recurrence_start(rec, q0);
  const Index pos = positive_from(xs, b.n0);
  const RationalFunction m = b.lower.fn(), M = b.upper.fn();
  const Index lo = std::max<Index>(qrec, 1);
  const Index hP = convex.holds_from;

  const RationalFunction& R = rec.R();
  const RationalFunction& S = rec.S();
  const RationalFunction dltR = weighted_det(R, DetKind::delta);

  Certificate cert;
  cert.property = Property::log_balanced;
  cert.bounds = b;
  cert.bounds_proof = vb.proof;
  cert.base_cases = vb.base_cases;
  std::vector<Route> routes;
  std::vector<RationalFunction> dets{dltR};
  // Q(n) follows for n >= max(start, p_floor) from P on the convex range, or
  // inductively from Q(n-1) when q_lookback = 1.
  Index p_floor = 0;
  int q_lookback = 0;

  if (rec.order() == 2) {
    const EventualSign s = eventual_sign(S, lo);
    Choice u = minimising(dltR, m, M, lo);
    if (s.sign >= 0) {
      cert.method = Method::prop4;
      const RationalFunction dltS = weighted_det(S, DetKind::delta);
      dets.push_back(dltS);
      routes.push_back({"bounds",
                        {{"determinant condition with adverse x_{n-1}", dltR * u.bound.shifted(-1) + dltS}},
                        std::max({lo, s.from, b.n0 + 1, u.from})});
      routes.push_back({"positivity",
                        {{"determinant delta of R", dltR}, {"determinant delta of S", dltS}},
                        std::max({lo, s.from, pos + 1})});
      p_floor = hP + 1;
    } else {
      cert.method = Method::prop5;
      const RationalFunction bar = weighted_det(S, DetKind::delta_bar);
      dets.push_back(bar);
      routes.push_back({"bounds",
                        {{"determinant condition with adverse x_{n-1}", dltR * u.bound.shifted(-1) + bar}},
                        std::max({lo, Index{2}, s.from, b.n0 + 1, u.from})});
      routes.push_back({"positivity",
                        {{"determinant delta of R", dltR}, {"determinant delta-bar of S", bar}},
                        std::max({lo, Index{2}, s.from, pos + 1})});
      q_lookback = 1;
    }
  } else {
    const RationalFunction& T = rec.T();
    const EventualSign s = eventual_sign(S, lo), t = eventual_sign(T, lo);
    if (s.sign < 0 || t.sign < 0)
      return make_failure(stage, "unsupported_sign_pattern", "order-3 balancedness needs S and T eventually nonnegative");
    cert.method = Method::three_term_balanced;
    const RationalFunction dltS = weighted_det(S, DetKind::delta), dltT = weighted_det(T, DetKind::delta);
    dets.push_back(dltS);
    dets.push_back(dltT);
    Choice u = minimising(dltR, m, M, lo);
    const RationalFunction g = dltR * u.bound.shifted(-1) + dltS;
    Choice v = minimising(g, m, M, lo);
    routes.push_back({"bounds",
                      {{"three-term determinant condition with adverse bounds", v.bound.shifted(-2) * g + dltT}},
                      std::max({lo, s.from, t.from, b.n0 + 2, u.from, v.from})});
    routes.push_back({"positivity",
                      {{"determinant delta of R", dltR}, {"determinant delta of S", dltS}, {"determinant delta of T", dltT}},
                      std::max({lo, s.from, t.from, pos + 2})});
    p_floor = hP + 2;
  }

  auto d = best_route(routes, stage);
  if (auto* f = std::get_if<Failure>(&d)) return std::move(*f);
  auto& ok = std::get<Discharged>(d);
  cert.tail_inequalities = ok.tails;

  auto q_at = [&](Index k) { return balanced_at(xs, k); };
  const Index q_floor = std::max<Index>(q0, 1);
  if (q_lookback == 0) {
    cert.n_star = std::max(ok.start, p_floor);
  } else {
    std::optional<Index> seed;
    for (Index n = std::max(ok.start, q_floor + 1); n <= std::max(max_base, ok.start); ++n) {
      if (q_at(n - 1)) {
        seed = n;
        break;
      }
      if (n >= max_base) break;
    }
    if (!seed)
      return make_failure(stage, "seed",
                          "no index N in [" + std::to_string(ok.start) + ", " + std::to_string(max_base) +
                              "] has x_N <= (N/(N-1)) x_{N-1}",
                          ok.start);
    cert.n_star = *seed;
  }
  const Index hQ = scan_down(q_at, cert.n_star, q_floor);
  for (Index k = hQ; k < cert.n_star; ++k)
    cert.base_cases.push_back({k, "balanced", xs.x(k + 1), Rational(k + 1, k) * xs.x(k), {}});
  cert.holds_from = std::max(hP, hQ);

  // Smallest s such that (a_n)_{n >= s}, re-indexed from zero, is log-balanced.
  const Index h = cert.holds_from;
  for (Index s = q0 - 1; s < h; ++s) {
    bool good = true;
    for (Index n = s + 1; n < h && good; ++n)
      good = convex_at(xs, n) && xs.x(n + 1) <= Rational(n - s + 1, n - s) * xs.x(n);
    if (good) {
      cert.reindexed_from = s;
      if (s < h - 1)
        for (Index n = s + 1; n < h; ++n)
          cert.base_cases.push_back({n, "balanced_shifted", xs.x(n + 1), Rational(n - s + 1, n - s) * xs.x(n), s});
      break;
    }
  }
  if (!cert.reindexed_from) cert.reindexed_from = h;

  Index dfrom = 0;
  bool all_nonneg = true;
  for (const auto& f : dets) {
    auto ev = eventual_sign(f, std::max<Index>(1, rec.offset));
    if (ev.sign < 0) all_nonneg = false;
    dfrom = std::max(dfrom, ev.from);
  }
  if (all_nonneg) cert.delta_nonneg_from = dfrom;
  return cert;
}

// ---------------------------------------------------------------------------
// Pipeline

std::optional<Index> first_defining_violation(const Recurrence& rec, Property p, Index from, Index to) {
  Quotients xs(rec, to + 2);
  for (Index n = std::max(from, xs.first()); n <= to; ++n) {
    if (!convex_at(xs, n)) return n;
    if (p == Property::log_balanced && !balanced_at(xs, n)) return n;
  }
  return std::nullopt;
}

namespace {

QuotientBounds widen(const QuotientBounds& b) {
  QuotientBounds w = b;
  if (b.shape == BoundShape::constant) {
    Rational m = b.lower.intercept - Rational(1, 2);
    if (m.sign() <= 0) m = b.lower.intercept / Rational(2);
    w.lower.intercept = m;
    w.upper.intercept = b.upper.intercept + Rational(1, 2);
  } else {
    w.lower.intercept = b.lower.intercept - Rational(1);
    w.upper.intercept = b.upper.intercept + Rational(1);
    if (w.lower.at(w.n0).sign() <= 0) w.lower.intercept = b.lower.intercept;
  }
  return w;
}

struct Attempt {
  std::vector<Certificate> certs;
  std::vector<Failure> failures;
  int score() const { return static_cast<int>(certs.size()); }
};

Attempt attempt_with(const Recurrence& rec, const QuotientBounds& b, bool allow_widening, Index max_base) {
  Attempt a;
  QuotientBounds cur = b;
  const int tries = allow_widening ? 4 : 1;
  for (int i = 0; i < tries; ++i) {
    auto vb = verify_bounds(rec, cur);
    if (auto* f = std::get_if<Failure>(&vb)) {
      a.failures.push_back(*f);
      cur = widen(cur);
      continue;
    }
    const auto& verified = std::get<VerifiedBounds>(vb);
    a.failures.clear();
    auto convex = certify_log_convex(rec, verified, max_base);
    if (auto* f = std::get_if<Failure>(&convex)) {
      a.failures.push_back(*f);
      return a;
    }
    a.certs.push_back(std::get<Certificate>(convex));
    auto bal = certify_log_balanced(rec, verified, a.certs.front(), max_base);
    if (auto* f = std::get_if<Failure>(&bal))
      a.failures.push_back(*f);
    else
      a.certs.push_back(std::get<Certificate>(bal));
    return a;
  }
  return a;
}

void add_counterexample(Report& rep, Property p, Index max_base) {
  Quotients xs(rep.analysed, max_base + 4);
  const Index q0 = xs.first();
  std::optional<Index> first;
  Index count = 0;
  for (Index n = std::max<Index>(q0, 1); n <= max_base; ++n) {
    const bool ok = convex_at(xs, n) && (p == Property::log_convex || balanced_at(xs, n));
    if (!ok) {
      if (!first) first = n;
      ++count;
    }
  }
  if (!first) return;
  const Index n = *first;
  const bool convex_fails = !convex_at(xs, n);
  std::vector<std::pair<std::string, Rational>> values{{"x_n", xs.x(n)}, {"x_{n+1}", xs.x(n + 1)}};
  if (!convex_fails) values.emplace_back("((n+1)/n) x_n", Rational(n + 1, n) * xs.x(n));
  rep.failures.push_back(make_failure(
      std::string(to_string(p)), "counterexample",
      std::string(convex_fails ? "x_n <= x_{n+1}" : "x_{n+1} <= ((n+1)/n) x_n") + " fails at n = " +
          std::to_string(n) + "; " + std::to_string(count) + " violation(s) for n <= " + std::to_string(max_base),
      n, std::move(values)));
}

}  // namespace

Report certify_pipeline(const Recurrence& rec, const CertifyOptions& opts) {
  Report rep;
  rep.input = rec;
  rep.analysed = rec;
  try {
    if (!rec.homogeneous()) {
      rep.analysed = homogenize(rec);
      rep.homogenized = true;
    }
    const Recurrence& r = rep.analysed;
    const Index prefix = std::max<Index>(20, r.order());
    rep.terms_prefix = compute_terms(r, static_cast<std::size_t>(prefix)).terms;
    Quotients xs(r, opts.max_base + 8);
    const Index q0 = xs.first();
    if (xs.terms().at(q0 - 1).sign() <= 0) {
      rep.failures.push_back(make_failure("input", "nonpositive_terms", "the sequence must be positive", q0 - 1));
      return rep;
    }

    Attempt best;
    if (r.order() == 1) {
      auto convex = certify_order1(r, Property::log_convex, opts.max_base);
      if (auto* f = std::get_if<Failure>(&convex)) {
        best.failures.push_back(*f);
      } else {
        best.certs.push_back(std::get<Certificate>(convex));
        auto bal = certify_order1(r, Property::log_balanced, opts.max_base);
        if (auto* f = std::get_if<Failure>(&bal))
          best.failures.push_back(*f);
        else
          best.certs.push_back(std::get<Certificate>(bal));
      }
    } else if (opts.bounds_override) {
      best = attempt_with(r, *opts.bounds_override, false, opts.max_base);
    } else {
      std::vector<QuotientBounds> candidates{propose_bounds(r, opts.probe_window)};
      const Index later = quotient_recurrence_start(r, q0) + opts.probe_window / 2;
      QuotientBounds b2 = propose_from(r, later, opts.probe_window);
      if (!(b2 == candidates.front())) candidates.push_back(b2);
      std::vector<Failure> all;
      for (const auto& c : candidates) {
        Attempt a = attempt_with(r, c, true, opts.max_base);
        all.insert(all.end(), a.failures.begin(), a.failures.end());
        if (a.score() > best.score()) best = std::move(a);
        if (best.score() == 2) break;
      }
      if (best.score() == 0) best.failures = std::move(all);
    }
    rep.certificates = std::move(best.certs);
    for (auto& f : best.failures) {
      const bool seen = std::any_of(rep.failures.begin(), rep.failures.end(), [&](const Failure& g) {
        return g.stage == f.stage && g.reason == f.reason && g.detail == f.detail;
      });
      if (!seen) rep.failures.push_back(std::move(f));
    }
    if (rep.certified(Property::log_balanced))
      rep.verdict = Verdict::log_balanced;
    else if (rep.certified(Property::log_convex))
      rep.verdict = Verdict::log_convex;
    if (!rep.certified(Property::log_balanced))
      add_counterexample(rep, rep.certified(Property::log_convex) ? Property::log_balanced : Property::log_convex,
                         opts.max_base);
  } catch (const PoleError& e) {
    rep.failures.push_back(make_failure("input", "pole", e.what(), e.at()));
  } catch (const RecurrenceError& e) {
    rep.failures.push_back(make_failure("input", "recurrence", e.what()));
  } catch (const AnalysisError& e) {
    rep.failures.push_back(make_failure("input", "analysis", e.what()));
  }
  return rep;
}

}  // namespace logbal
