#include "logbal/catalog.hpp"

#include <algorithm>
#include <map>

#include "logbal/recdsl.hpp"

namespace logbal {

std::string_view to_string(ExpectedProperty p) {
  return p == ExpectedProperty::log_balanced ? "log_balanced" : "not_log_balanced";
}

namespace {

const std::vector<std::string> kNames = {
    "apery",  "baxter",        "delannoy",   "factorial_shift_down", "factorial_shift_up", "factorial_squared",
    "fine",   "franel3",       "franel4",    "legendre:<t>",         "motzkin",            "polyomino_dcc",
    "schroeder", "sum_factorials"};

Rational parse_legendre(std::string_view name) {
  const std::string_view arg = name.substr(std::string_view("legendre:").size());
  Rational t;
  try {
    t = Rational::parse(arg);
  } catch (const ArithmeticError&) {
    throw LookupError("legendre parameter '" + std::string(arg) + "' is not a rational literal");
  }
  if (t < Rational(1)) throw LookupError("legendre parameter must satisfy t >= 1, got " + t.to_string());
  return t;
}

bool is_legendre(std::string_view name) { return name.starts_with("legendre:"); }

CatalogEntry legendre_entry(const std::string& name, const Rational& t) {
  const std::string ts = "(" + t.to_string() + ")";
  CatalogEntry e;
  e.name = name;
  e.recurrence = parse_recurrence("a[n] = ((2*n-1)*" + ts + "/n)*a[n-1] - ((n-1)/n)*a[n-2]; a[0]=1; a[1]=" +
                                  t.to_string());
  e.expected_bounds = QuotientBounds::constant(t, t * Rational(2), 1);
  e.expected_holds_from = 1;
  e.notes = "Bonnet recurrence for Legendre polynomial values P_n(t) at t = " + t.to_string() + ".";
  return e;
}

std::string unknown_message(std::string_view name) {
  std::string msg = "unknown catalog entry '" + std::string(name) + "'; valid keys:";
  for (const auto& k : kNames) msg += " " + k;
  return msg;
}

}  // namespace

std::vector<std::string> catalog_names() { return kNames; }

std::vector<std::string> catalog_all_names() {
  std::vector<std::string> out;
  for (const auto& k : kNames)
    if (k != "legendre:<t>") out.push_back(k);
  for (const char* t : {"legendre:1", "legendre:2", "legendre:7/2"}) out.emplace_back(t);
  std::sort(out.begin(), out.end());
  return out;
}

CatalogEntry catalog_get(std::string_view name) {
  if (is_legendre(name)) return legendre_entry(std::string(name), parse_legendre(name));

  CatalogEntry e;
  e.name = std::string(name);
  auto rec = [](std::string_view text) { return parse_recurrence(text); };

  if (name == "motzkin") {
    e.recurrence = rec("a[n] = ((2*n+1)/(n+2))*a[n-1] + ((3*(n-1))/(n+2))*a[n-2]; a[0]=1; a[1]=1");
    e.expected_bounds = QuotientBounds::constant(2, Rational(7, 2), 2);
    e.expected_holds_from = 1;
    e.expected_delta_from = 3;
    e.notes = "Motzkin numbers M_n, M_0 = M_1 = 1.";
  } else if (name == "fine") {
    e.recurrence = rec("a[n] = ((7*n-5)/(2*n+2))*a[n-1] + ((2*n-1)/(n+1))*a[n-2]; a[0]=1; a[1]=0");
    e.expected_bounds = QuotientBounds::constant(3, 6, 4);
    e.expected_holds_from = 2;
    e.holds_from_reindexed = true;
    e.notes = "Fine numbers B_n, B_0 = 1, B_1 = 0; quotients start at n = 3 and x_3 = 2, so the bounds 3..6 hold from n = 4.";
  } else if (name == "franel3") {
    e.recurrence = rec("a[n] = ((7*n^2-7*n+2)/n^2)*a[n-1] + ((8*(n-1)^2)/n^2)*a[n-2]; a[0]=1; a[1]=2");
    e.expected_bounds = QuotientBounds::constant(5, 9, 3);
    e.expected_holds_from = 2;
    e.notes = "Franel numbers of order 3, sum of C(n,k)^3.";
  } else if (name == "franel4") {
    e.recurrence = rec(
        "a[n] = (2*(6*n^3-9*n^2+5*n-1)/n^3)*a[n-1] + ((4*n-3)*(4*n-4)*(4*n-5)/n^3)*a[n-2]; a[0]=1; a[1]=2");
    e.expected_bounds = QuotientBounds::constant(11, 18, 4);
    e.expected_holds_from = 2;
    e.notes = "Franel numbers of order 4, sum of C(n,k)^4. Bounds derived from the limit of R(n) and the first quotients.";
  } else if (name == "apery") {
    e.recurrence = rec("a[n] = ((34*n^3-51*n^2+27*n-5)/n^3)*a[n-1] - ((n-1)^3/n^3)*a[n-2]; a[0]=1; a[1]=5");
    e.expected_bounds = QuotientBounds::constant(1, 34, 1);
    e.expected_holds_from = 2;
    e.notes = "Apery numbers, sum of C(n,k)^2 C(n+k,k)^2. M = 34 is the limit of R(n).";
  } else if (name == "schroeder") {
    e.recurrence = rec("a[n] = ((3*(2*n-1))/(n+1))*a[n-1] - ((n-2)/(n+1))*a[n-2]; a[0]=1; a[1]=2");
    e.expected_bounds = QuotientBounds::constant(3, 6, 2);
    e.expected_holds_from = 1;
    e.notes = "Large Schroeder numbers r_n, r_0 = 1, r_1 = 2.";
  } else if (name == "delannoy") {
    e = legendre_entry("delannoy", Rational(3));
    e.notes = "Central Delannoy numbers D_n = P_n(3).";
  } else if (name == "polyomino_dcc") {
    e.recurrence = rec("a[n] = (n+2)*a[n-1] - (n-1)*a[n-2]; a[1]=1; a[2]=3");
    e.expected_bounds = QuotientBounds::affine({1, 1}, {1, 2}, 2);
    e.expected_holds_from = 2;
    e.notes = "Directed column-convex polyominoes by height, a_1 = 1, a_2 = 3.";
  } else if (name == "baxter") {
    e.recurrence = rec(
        "a[n] = (2*(9*n^3+3*n^2-4*n+4)/((n+2)*(n+3)*(3*n-2)))*a[n-1]"
        " + ((3*n-1)*(n-2)*(15*n^2-5*n-14)/((n+1)*(n+2)*(n+3)*(3*n-2)))*a[n-2]"
        " + (8*(3*n+1)*(n-2)^2*(n-3)/((n+1)*(n+2)*(n+3)*(3*n-2)))*a[n-3]; a[0]=1; a[1]=1; a[2]=2");
    e.expected_bounds = QuotientBounds::constant(7, 9, 47);
    e.expected_delta_from = 13;
    e.notes =
        "Baxter permutations. Initial values 1, 1, 2 are taken from the triple-binomial formula "
        "sum_k C(n+1,k-1) C(n+1,k) C(n+1,k+1) / (C(n+1,1) C(n+1,2)), which the recurrence reproduces.";
  } else if (name == "factorial_shift_up") {
    e.recurrence = rec("a[n] = (n+1)*a[n-1]; a[0]=1");
    e.expected_holds_from = 1;
    e.notes = "(n+1)!, log-balanced.";
  } else if (name == "factorial_shift_down") {
    e.recurrence = rec("a[n] = (n-1)*a[n-1]; a[2]=1");
    e.expected_property = ExpectedProperty::not_log_balanced;
    e.notes = "(n-1)! from n = 2; not log-balanced.";
  } else if (name == "factorial_squared") {
    e.recurrence = rec("a[n] = n^2*a[n-1]; a[0]=1");
    e.expected_property = ExpectedProperty::not_log_balanced;
    e.notes = "(n!)^2; not log-balanced.";
  } else if (name == "sum_factorials") {
    e.recurrence = rec("a[n] = (n+1)*a[n-1] - n*a[n-2]; a[0]=1; a[1]=2");
    e.expected_property = ExpectedProperty::not_log_balanced;
    e.notes = "Sum of k! for k = 0..n in homogeneous form; a_n - a_{n-1} = n!.";
  } else {
    throw LookupError(unknown_message(name));
  }
  e.recurrence.name = e.name;
  return e;
}

namespace {

Integer motzkin(Index n) {
  // Paths of length n with steps up, down, flat that never go below zero.
  std::vector<Integer> h(static_cast<std::size_t>(n) + 2, 0);
  h[0] = 1;
  for (Index step = 0; step < n; ++step) {
    std::vector<Integer> next(h.size(), 0);
    for (std::size_t y = 0; y + 1 < h.size(); ++y) {
      if (h[y] == 0) continue;
      next[y] += h[y];
      next[y + 1] += h[y];
      if (y > 0) next[y - 1] += h[y];
    }
    h = std::move(next);
  }
  return h[0];
}

Integer lattice_paths(Index n, bool below_diagonal) {
  const auto size = static_cast<std::size_t>(n) + 1;
  std::vector<std::vector<Integer>> p(size, std::vector<Integer>(size, 0));
  p[0][0] = 1;
  for (std::size_t x = 0; x < size; ++x) {
    for (std::size_t y = 0; y < size; ++y) {
      if (x == 0 && y == 0) continue;
      if (below_diagonal && y > x) continue;
      Integer v = 0;
      if (x > 0) v += p[x - 1][y];
      if (y > 0) v += p[x][y - 1];
      if (x > 0 && y > 0) v += p[x - 1][y - 1];
      p[x][y] = v;
    }
  }
  return p[size - 1][size - 1];
}

Integer catalan(Index n) {
  const auto u = static_cast<unsigned long>(n);
  return binomial(2 * u, u) / (u + 1);
}

Integer franel(Index n, int r) {
  Integer s = 0;
  for (Index k = 0; k <= n; ++k) {
    Integer c = binomial(static_cast<unsigned long>(n), static_cast<unsigned long>(k)), p = 1;
    for (int i = 0; i < r; ++i) p *= c;
    s += p;
  }
  return s;
}

}  // namespace

Rational oracle_eval(std::string_view name, Index n) {
  if (n < 0) throw LookupError("oracle index must be nonnegative");
  const auto u = static_cast<unsigned long>(n);
  if (is_legendre(name) || name == "delannoy") {
    if (name == "delannoy") return Rational(lattice_paths(n, false));
    const Rational t = parse_legendre(name);
    const Rational w = (t - Rational(1)) / Rational(2);
    Rational s, wk(1);
    for (unsigned long k = 0; k <= u; ++k) {
      s += Rational(binomial(u, k) * binomial(u + k, k)) * wk;
      wk *= w;
    }
    return s;
  }
  if (name == "motzkin") return Rational(motzkin(n));
  if (name == "schroeder") return Rational(lattice_paths(n, true));
  if (name == "fine") {
    Integer b = 1;
    for (Index k = 1; k <= n; ++k) b = (catalan(k) - b) / 2;
    return Rational(b);
  }
  if (name == "franel3") return Rational(franel(n, 3));
  if (name == "franel4") return Rational(franel(n, 4));
  if (name == "apery") {
    Integer s = 0;
    for (unsigned long k = 0; k <= u; ++k) {
      Integer c = binomial(u, k) * binomial(u + k, k);
      s += c * c;
    }
    return Rational(s);
  }
  if (name == "polyomino_dcc") {
    if (n < 1) throw LookupError("polyomino_dcc starts at n = 1");
    std::vector<Integer> a{0, 1, 3};
    Integer sum = 4;
    for (Index k = 2; static_cast<Index>(a.size()) <= n; ++k) {
      Integer next = Integer(k + 1) * a[static_cast<std::size_t>(k)] + sum;
      sum += next;
      a.push_back(next);
    }
    return Rational(a[u]);
  }
  if (name == "baxter") {
    if (n == 0) return Rational(1);
    const unsigned long m = u + 1;
    Integer s = 0;
    for (unsigned long k = 1; k <= u; ++k) s += binomial(m, k - 1) * binomial(m, k) * binomial(m, k + 1);
    return Rational(s / (binomial(m, 1) * binomial(m, 2)));
  }
  if (name == "factorial_shift_up") return Rational(factorial(u + 1));
  if (name == "factorial_shift_down") {
    if (n < 2) throw LookupError("factorial_shift_down starts at n = 2");
    return Rational(factorial(u - 1));
  }
  if (name == "factorial_squared") return Rational(factorial(u) * factorial(u));
  if (name == "sum_factorials") {
    Integer s = 0;
    for (unsigned long k = 0; k <= u; ++k) s += factorial(k);
    return Rational(s);
  }
  if (std::find(kNames.begin(), kNames.end(), std::string(name)) == kNames.end())
    throw LookupError(unknown_message(name));
  throw LookupError("no oracle for '" + std::string(name) + "'");
}

}  // namespace logbal
