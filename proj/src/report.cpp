#include "logbal/report.hpp"

#include <json.hpp>
#include <sstream>

#include "logbal/recdsl.hpp"

#ifndef LOGBAL_VERSION
#define LOGBAL_VERSION "0.0.0"
#endif

namespace logbal {

using nlohmann::ordered_json;

std::string tool_version() { return LOGBAL_VERSION; }

namespace {

ordered_json affine_json(const Affine& a) {
  return {{"slope", a.slope.to_string()}, {"intercept", a.intercept.to_string()}};
}

ordered_json bounds_json(const QuotientBounds& b) {
  ordered_json j;
  j["shape"] = to_string(b.shape);
  j["lower"] = affine_json(b.lower);
  j["upper"] = affine_json(b.upper);
  j["n0"] = b.n0;
  if (b.shape == BoundShape::constant) {
    j["m"] = b.lower.intercept.to_string();
    j["M"] = b.upper.intercept.to_string();
  }
  return j;
}

ordered_json tails_json(const std::vector<TailInequality>& tails) {
  ordered_json arr = ordered_json::array();
  for (const auto& t : tails) {
    ordered_json coeffs = ordered_json::array();
    for (const auto& c : t.polynomial.coefficients()) coeffs.push_back(c.to_string());
    arr.push_back({{"description", t.description},
                   {"expression", t.expression},
                   {"polynomial", coeffs},
                   {"text", t.polynomial.to_string()},
                   {"from", t.from}});
  }
  return arr;
}

ordered_json certificate_json(const Certificate& c) {
  ordered_json j;
  j["property"] = to_string(c.property);
  j["method"] = to_string(c.method);
  j["bounds"] = c.bounds ? bounds_json(*c.bounds) : ordered_json(nullptr);
  j["n_star"] = c.n_star;
  j["holds_from"] = c.holds_from;
  j["reindexed_from"] = c.reindexed_from ? ordered_json(*c.reindexed_from) : ordered_json(nullptr);
  j["delta_nonneg_from"] = c.delta_nonneg_from ? ordered_json(*c.delta_nonneg_from) : ordered_json(nullptr);
  j["tail_inequalities"] = tails_json(c.tail_inequalities);
  ordered_json bases = ordered_json::array();
  for (const auto& b : c.base_cases) {
    ordered_json e{{"n", b.n}, {"kind", b.kind}, {"lhs", b.lhs.to_string()}, {"rhs", b.rhs.to_string()}};
    if (b.shift) e["shift"] = *b.shift;
    bases.push_back(std::move(e));
  }
  j["base_cases"] = std::move(bases);
  j["bounds_proof"] = tails_json(c.bounds_proof);
  return j;
}

ordered_json failure_json(const Failure& f) {
  ordered_json values = ordered_json::array();
  for (const auto& [k, v] : f.values) values.push_back({{"name", k}, {"value", v.to_string()}});
  return {{"stage", f.stage},
          {"reason", f.reason},
          {"detail", f.detail},
          {"witness", f.witness ? ordered_json(*f.witness) : ordered_json(nullptr)},
          {"values", values}};
}

ordered_json report_json(const Report& rep, const std::string& source) {
  ordered_json input;
  input["source"] = source;
  input["name"] = rep.input.name;
  input["recurrence"] = format_recurrence(rep.input);
  input["offset"] = rep.input.offset;
  input["homogenized"] = rep.homogenized;
  if (rep.homogenized) input["analysed_recurrence"] = format_recurrence(rep.analysed);

  ordered_json j;
  j["tool_version"] = tool_version();
  j["input"] = std::move(input);
  j["verdict"] = to_string(rep.verdict);
  j["certificates"] = ordered_json::array();
  for (const auto& c : rep.certificates) j["certificates"].push_back(certificate_json(c));
  j["failures"] = ordered_json::array();
  for (const auto& f : rep.failures) j["failures"].push_back(failure_json(f));
  j["terms_prefix"] = ordered_json::array();
  for (const auto& t : rep.terms_prefix) j["terms_prefix"].push_back(t.to_string());
  return j;
}

void tails_text(std::ostream& os, const std::vector<TailInequality>& tails, const char* indent) {
  for (const auto& t : tails)
    os << indent << t.description << ": " << t.polynomial.to_string() << " >= 0 for n >= " << t.from << "\n";
}

}  // namespace

std::string report_to_json(const Report& rep, const std::string& source, int indent) {
  return report_json(rep, source).dump(indent);
}

std::string report_to_text(const Report& rep, const std::string& source) {
  std::ostringstream os;
  os << "source: " << source << "\n";
  if (!rep.input.name.empty()) os << "name: " << rep.input.name << "\n";
  os << "recurrence: " << format_recurrence(rep.input) << "\n";
  if (rep.homogenized) os << "homogenized: " << format_recurrence(rep.analysed) << "\n";
  os << "verdict: " << to_string(rep.verdict) << "\n";
  for (const auto& c : rep.certificates) {
    os << "certificate " << to_string(c.property) << " via " << to_string(c.method) << "\n";
    if (c.bounds) os << "  bounds: " << c.bounds->to_string() << "\n";
    os << "  holds from n = " << c.holds_from << " (induction from n = " << c.n_star << ")\n";
    if (c.reindexed_from) os << "  re-indexed: (a_n)_{n >= " << *c.reindexed_from << "} is log-balanced\n";
    if (c.delta_nonneg_from) os << "  determinants nonnegative from n = " << *c.delta_nonneg_from << "\n";
    tails_text(os, c.tail_inequalities, "  tail ");
    tails_text(os, c.bounds_proof, "  bounds step ");
    os << "  base cases checked: " << c.base_cases.size() << "\n";
  }
  for (const auto& f : rep.failures) {
    os << "failure [" << f.stage << "/" << f.reason << "]";
    if (f.witness) os << " at n = " << *f.witness;
    os << ": " << f.detail << "\n";
    for (const auto& [k, v] : f.values) os << "  " << k << " = " << v.to_string() << "\n";
  }
  os << "terms:";
  for (const auto& t : rep.terms_prefix) os << " " << t.to_string();
  os << "\n";
  return os.str();
}

namespace {

ordered_json classification_json(const Classification& c, const Prop1Report* p) {
  ordered_json j;
  j["verdict"] = to_string(c.verdict);
  j["window"] = {{"first", c.first}, {"last", c.last}};
  j["witness"] = c.witness ? ordered_json(*c.witness) : ordered_json(nullptr);
  if (p) {
    ordered_json a = ordered_json::array(), b = ordered_json::array();
    for (const auto& v : p->part_a_violations)
      a.push_back({{"n", v.n}, {"lhs", v.lhs.to_string()}, {"mid", v.mid.to_string()}, {"rhs", v.rhs.to_string()}});
    for (const auto& v : p->part_b_violations)
      b.push_back({{"n", v.n},
                   {"m", v.m},
                   {"lower", v.lower.to_string()},
                   {"value", v.value.to_string()},
                   {"upper", v.upper.to_string()}});
    j["prop1"] = {{"part_a_range", {p->part_a_from, p->part_a_to}},
                  {"part_a_violations", a},
                  {"part_b_applicable", p->part_b_applicable},
                  {"max_sum", p->max_sum},
                  {"part_b_violations", b}};
  }
  return j;
}

}  // namespace

std::string classification_to_json(const Classification& c, const Prop1Report* prop1, int indent) {
  return classification_json(c, prop1).dump(indent);
}

std::string classification_to_text(const Classification& c, const Prop1Report* p) {
  std::ostringstream os;
  os << "classification: " << to_string(c.verdict) << " on n in [" << c.first << ", " << c.last << "]";
  if (c.witness) os << " (witness n = " << *c.witness << ")";
  os << "\n";
  if (p) {
    os << "part (a) for n in [" << p->part_a_from << ", " << p->part_a_to << "]: "
       << p->part_a_violations.size() << " violation(s)\n";
    for (const auto& v : p->part_a_violations)
      os << "  n = " << v.n << ": " << v.lhs.to_string() << " <= " << v.mid.to_string() << " <= "
         << v.rhs.to_string() << " fails\n";
    if (p->part_b_applicable) {
      os << "part (b) for n + m <= " << p->max_sum << ": " << p->part_b_violations.size() << " violation(s)\n";
      for (const auto& v : p->part_b_violations)
        os << "  n = " << v.n << ", m = " << v.m << ": " << v.lower.to_string() << " <= " << v.value.to_string()
           << " <= " << v.upper.to_string() << " fails\n";
    } else {
      os << "part (b) not applicable (needs offset 0 and a_0 = 1)\n";
    }
  }
  return os.str();
}

namespace {

Affine affine_from(const ordered_json& j) {
  return {Rational::parse(j.at("slope").get<std::string>()), Rational::parse(j.at("intercept").get<std::string>())};
}

}  // namespace

ReplayResult replay_report_json(std::string_view json_text) {
  ReplayResult res;
  auto problem = [&](std::string msg) {
    res.ok = false;
    res.problems.push_back(std::move(msg));
  };
  ordered_json j;
  try {
    j = ordered_json::parse(json_text);
  } catch (const std::exception& e) {
    problem(std::string("invalid JSON: ") + e.what());
    return res;
  }

  const auto& input = j.at("input");
  const std::string text =
      input.contains("analysed_recurrence") ? input.at("analysed_recurrence").get<std::string>()
                                            : input.at("recurrence").get<std::string>();
  const Recurrence rec = parse_recurrence(text);

  Index needed = 0;
  for (const auto& c : j.at("certificates"))
    for (const auto& b : c.at("base_cases")) needed = std::max(needed, b.at("n").get<Index>() + 2);
  const TermTable tab = compute_terms(rec, static_cast<std::size_t>(std::max<Index>(needed - rec.offset, rec.order()) + 2));
  const QuotientTable q = quotient_sequence(tab);

  for (const auto& c : j.at("certificates")) {
    for (const char* key : {"tail_inequalities", "bounds_proof"}) {
      for (const auto& t : c.at(key)) {
        std::vector<Rational> coeffs;
        for (const auto& s : t.at("polynomial")) coeffs.push_back(Rational::parse(s.get<std::string>()));
        const Index from = t.at("from").get<Index>();
        ++res.tails_checked;
        if (!poly_tail_nonneg(Polynomial(std::move(coeffs)), from))
          problem("tail inequality '" + t.at("description").get<std::string>() + "' fails from n = " +
                  std::to_string(from));
      }
    }
    std::optional<QuotientBounds> bounds;
    if (!c.at("bounds").is_null()) {
      const auto& b = c.at("bounds");
      bounds = QuotientBounds{b.at("shape") == "constant" ? BoundShape::constant : BoundShape::affine,
                              affine_from(b.at("lower")), affine_from(b.at("upper")), b.at("n0").get<Index>()};
    }
    for (const auto& b : c.at("base_cases")) {
      const Index n = b.at("n").get<Index>();
      const std::string kind = b.at("kind").get<std::string>();
      const Rational lhs = Rational::parse(b.at("lhs").get<std::string>());
      const Rational rhs = Rational::parse(b.at("rhs").get<std::string>());
      Rational want_lhs, want_rhs;
      if (kind == "convex") {
        want_lhs = q.at(n);
        want_rhs = q.at(n + 1);
      } else if (kind == "balanced") {
        want_lhs = q.at(n + 1);
        want_rhs = Rational(n + 1, n) * q.at(n);
      } else if (kind == "balanced_shifted") {
        const Index s = b.at("shift").get<Index>();
        want_lhs = q.at(n + 1);
        want_rhs = Rational(n - s + 1, n - s) * q.at(n);
      } else if (kind == "lower_bound" && bounds) {
        want_lhs = bounds->lower.at(n);
        want_rhs = q.at(n);
      } else if (kind == "upper_bound" && bounds) {
        want_lhs = q.at(n);
        want_rhs = bounds->upper.at(n);
      } else {
        problem("unknown base case kind '" + kind + "'");
        continue;
      }
      ++res.base_cases_checked;
      if (lhs != want_lhs || rhs != want_rhs)
        problem(kind + " base case at n = " + std::to_string(n) + " does not match recomputed values");
      else if (!(want_lhs <= want_rhs))
        problem(kind + " base case at n = " + std::to_string(n) + " is false");
    }
  }
  return res;
}

}  // namespace logbal
