#include "logbal/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <future>
#include <sstream>

#include "logbal/analysis.hpp"
#include "logbal/catalog.hpp"
#include "logbal/certify.hpp"
#include "logbal/recdsl.hpp"
#include "logbal/report.hpp"

namespace logbal::cli {

namespace {

using nlohmann::ordered_json;

class UsageError : public Error {
 public:
  using Error::Error;
};

struct Source {
  std::string rec_path;
  std::string inline_text;
  std::string catalog;

  int count() const { return !rec_path.empty() + !inline_text.empty() + !catalog.empty(); }

  std::string describe() const {
    if (!rec_path.empty()) return "file:" + rec_path;
    if (!inline_text.empty()) return "inline";
    return "catalog:" + catalog;
  }

  Recurrence load() const {
    if (count() != 1) throw UsageError("exactly one of --rec, --inline, --catalog is required");
    if (!catalog.empty()) return catalog_get(catalog).recurrence;
    if (!inline_text.empty()) return parse_recurrence(inline_text);
    std::ifstream in(rec_path, std::ios::binary);
    if (!in) throw UsageError("cannot open " + rec_path);
    std::stringstream ss;
    ss << in.rdbuf();
    Recurrence rec = parse_recurrence(ss.str());
    return rec;
  }
};

void add_source(CLI::App* cmd, Source& src) {
  cmd->add_option("--rec", src.rec_path, "Path to a .rec file");
  cmd->add_option("--inline", src.inline_text, "Recurrence text");
  cmd->add_option("--catalog", src.catalog, "Catalog entry name");
}

std::vector<Rational> parse_list(const std::string& s, std::size_t want, const char* flag) {
  std::vector<Rational> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(Rational::parse(item));
  if (out.size() != want)
    throw UsageError(std::string(flag) + " expects " + std::to_string(want) + " comma-separated rationals");
  return out;
}

Property parse_property(const std::string& s) {
  if (s == "log_balanced") return Property::log_balanced;
  if (s == "log_convex") return Property::log_convex;
  throw UsageError("unknown property '" + s + "'");
}

// n0 used when --bounds is given without --from: first index of the quotient recurrence.
Index default_n0(const Recurrence& rec) {
  const Recurrence a = rec.homogeneous() ? rec : homogenize(rec);
  const QuotientTable q = quotient_sequence(compute_terms(a, a.order() + 40));
  return quotient_recurrence_start(a, q.first_index);
}

struct CertifyArgs {
  std::string bounds, bounds_affine, property = "log_balanced";
  std::optional<Index> from;
  Index max_base = 200, probe_window = 30;
};

CertifyOptions build_options(const Recurrence& rec, const CertifyArgs& a) {
  CertifyOptions opts;
  opts.max_base = a.max_base;
  opts.probe_window = a.probe_window;
  if (!a.bounds.empty() && !a.bounds_affine.empty())
    throw UsageError("--bounds and --bounds-affine are mutually exclusive");
  if (!a.bounds.empty()) {
    auto v = parse_list(a.bounds, 2, "--bounds");
    opts.bounds_override =
        QuotientBounds{BoundShape::constant, {Rational(0), v[0]}, {Rational(0), v[1]}, a.from.value_or(default_n0(rec))};
  } else if (!a.bounds_affine.empty()) {
    auto v = parse_list(a.bounds_affine, 4, "--bounds-affine");
    opts.bounds_override =
        QuotientBounds{BoundShape::affine, {v[0], v[1]}, {v[2], v[3]}, a.from.value_or(default_n0(rec))};
  } else if (a.from) {
    Recurrence h = rec.homogeneous() ? rec : homogenize(rec);
    QuotientBounds b = propose_bounds(h, a.probe_window);
    b.n0 = *a.from;
    opts.bounds_override = b;
  }
  return opts;
}

struct Rendered {
  std::string text;
  bool certified = false;
};

Rendered certify_one(const Recurrence& rec, const std::string& source, const CertifyArgs& a, bool json) {
  const Report rep = certify_pipeline(rec, build_options(rec, a));
  Rendered r;
  r.certified = rep.certified(parse_property(a.property));
  r.text = json ? report_to_json(rep, source) : report_to_text(rep, source);
  return r;
}

int certify_all(const CertifyArgs& a, bool json, std::ostream& out, std::ostream& err) {
  const auto names = catalog_all_names();
  std::vector<std::future<Rendered>> jobs;
  for (const auto& name : names)
    jobs.push_back(std::async(std::launch::async, [&a, json, name] {
      return certify_one(catalog_get(name).recurrence, "catalog:" + name, a, json);
    }));
  bool all = true;
  std::vector<std::string> parts;
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    Rendered r = jobs[i].get();
    all = all && r.certified;
    parts.push_back(std::move(r.text));
  }
  if (json) {
    ordered_json arr = ordered_json::array();
    for (const auto& p : parts) arr.push_back(ordered_json::parse(p));
    out << arr.dump(2) << "\n";
  } else {
    for (std::size_t i = 0; i < parts.size(); ++i) out << (i ? "\n" : "") << parts[i];
  }
  if (!all) err << "not every catalog entry was certified\n";
  return all ? exit_ok : exit_not_certified;
}

ordered_json entry_json(const CatalogEntry& e) {
  ordered_json j;
  j["name"] = e.name;
  j["recurrence"] = format_recurrence(e.recurrence);
  j["expected_property"] = to_string(e.expected_property);
  if (e.expected_bounds) {
    const auto& b = *e.expected_bounds;
    j["expected_bounds"] = {{"shape", to_string(b.shape)},
                            {"lower", {{"slope", b.lower.slope.to_string()}, {"intercept", b.lower.intercept.to_string()}}},
                            {"upper", {{"slope", b.upper.slope.to_string()}, {"intercept", b.upper.intercept.to_string()}}},
                            {"n0", b.n0}};
  } else {
    j["expected_bounds"] = nullptr;
  }
  j["expected_holds_from"] = e.expected_holds_from ? ordered_json(*e.expected_holds_from) : ordered_json(nullptr);
  j["holds_from_reindexed"] = e.holds_from_reindexed;
  j["expected_delta_from"] = e.expected_delta_from ? ordered_json(*e.expected_delta_from) : ordered_json(nullptr);
  j["has_oracle"] = e.has_oracle;
  j["notes"] = e.notes;
  return j;
}

std::string entry_line(const CatalogEntry& e) {
  std::string s = e.name + "  " + std::string(to_string(e.expected_property));
  if (e.expected_bounds) s += "  bounds " + e.expected_bounds->to_string();
  if (e.expected_holds_from)
    s += "  from n = " + std::to_string(*e.expected_holds_from) + (e.holds_from_reindexed ? " (re-indexed)" : "");
  return s;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact log-convexity and log-balancedness certificates for P-recursive sequences", "logbal"};
  app.require_subcommand(1);
  app.set_version_flag("--version", tool_version());
  std::string format = "text";
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "json"}));

  Source src;
  auto* compute = app.add_subcommand("compute", "Print the first terms");
  std::size_t terms = 10;
  add_source(compute, src);
  compute->add_option("--terms", terms, "Number of terms")->check(CLI::PositiveNumber);

  auto* classify_cmd = app.add_subcommand("classify", "Classify the log behaviour of a window of terms");
  add_source(classify_cmd, src);
  std::size_t window = 30;
  bool prop1 = false;
  Index max_sum = 60;
  std::optional<Index> prop1_from;
  classify_cmd->add_option("--window", window, "Number of terms")->check(CLI::Range(3, 100000));
  classify_cmd->add_flag("--prop1", prop1, "Check the product inequalities as well");
  classify_cmd->add_option("--max-sum", max_sum, "Largest n + m for the binomial product check")->check(CLI::NonNegativeNumber);
  classify_cmd->add_option("--from", prop1_from, "First n for the ratio inequalities");

  auto* certify = app.add_subcommand("certify", "Certify log-convexity and log-balancedness");
  add_source(certify, src);
  CertifyArgs ca;
  certify->add_option("--bounds", ca.bounds, "Constant quotient bounds m,M");
  certify->add_option("--bounds-affine", ca.bounds_affine, "Affine quotient bounds am,bm,aM,bM");
  certify->add_option("--from", ca.from, "Index n0 from which the bounds are claimed");
  certify->add_option("--max-base", ca.max_base, "Cap on base-case checking")->check(CLI::PositiveNumber);
  certify->add_option("--probe-window", ca.probe_window, "Quotients used to propose bounds")->check(CLI::Range(5, 100000));
  certify->add_option("--property", ca.property, "Property deciding the exit code")
      ->check(CLI::IsMember({"log_balanced", "log_convex"}));

  auto* catalog = app.add_subcommand("catalog", "List or show catalog entries");
  std::vector<std::string> catalog_args;
  catalog->add_option("action", catalog_args, "list | show <name>")->required()->expected(1, 2);

  for (auto* cmd : {compute, classify_cmd, certify, catalog}) cmd->fallthrough();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? exit_ok : exit_usage;
  }
  const bool json = format == "json";

  try {
    if (*compute) {
      const TermTable tab = compute_terms(src.load(), terms);
      if (json) {
        ordered_json arr = ordered_json::array();
        for (const auto& t : tab.terms) arr.push_back(t.to_string());
        out << arr.dump(2) << "\n";
      } else {
        for (const auto& t : tab.terms) out << t.to_string() << "\n";
      }
      return exit_ok;
    }

    if (*classify_cmd) {
      const Recurrence rec = src.load();
      const TermTable tab = compute_terms(rec, window);
      const Classification c = classify(tab);
      std::optional<Prop1Report> p;
      if (prop1) {
        const std::size_t need = std::max<std::size_t>(window, static_cast<std::size_t>(max_sum) + 1);
        p = check_prop1(compute_terms(rec, need), max_sum, prop1_from);
      }
      out << (json ? classification_to_json(c, p ? &*p : nullptr) + "\n" : classification_to_text(c, p ? &*p : nullptr));
      return exit_ok;
    }

    if (*certify) {
      if (src.catalog == "all" && src.count() == 1) return certify_all(ca, json, out, err);
      const Recurrence rec = src.load();
      Rendered r = certify_one(rec, src.describe(), ca, json);
      out << r.text << (json ? "\n" : "");
      return r.certified ? exit_ok : exit_not_certified;
    }

    if (catalog_args[0] == "list" && catalog_args.size() == 1) {
      ordered_json arr = ordered_json::array();
      for (const auto& name : catalog_names()) {
        if (name.rfind("legendre:", 0) == 0) {
          if (json) arr.push_back({{"name", name}, {"parameter", "rational t >= 1"}});
          else out << name << "  log_balanced  bounds (t, 2t) from n = 1, any rational t >= 1\n";
          continue;
        }
        const CatalogEntry e = catalog_get(name);
        if (json) arr.push_back(entry_json(e));
        else out << entry_line(e) << "\n";
      }
      if (json) out << arr.dump(2) << "\n";
      return exit_ok;
    }
    if (catalog_args[0] == "show" && catalog_args.size() == 2) {
      const CatalogEntry e = catalog_get(catalog_args[1]);
      if (json) {
        out << entry_json(e).dump(2) << "\n";
      } else {
        out << entry_line(e) << "\n" << format_recurrence(e.recurrence) << "\n";
        if (!e.notes.empty()) out << e.notes << "\n";
      }
      return exit_ok;
    }
    throw UsageError("catalog expects 'list' or 'show <name>'");
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return exit_usage;
  } catch (const ParseError& e) {
    err << e.what() << "\n";
    return exit_usage;
  } catch (const LookupError& e) {
    err << "error: " << e.what() << "\n";
    return exit_usage;
  } catch (const RecurrenceError& e) {
    err << "error: " << e.what() << "\n";
    return exit_usage;
  } catch (const AnalysisError& e) {
    err << "error: " << e.what() << "\n";
    return exit_usage;
  } catch (const PoleError& e) {
    err << "error: " << e.what() << "\n";
    return exit_usage;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return exit_arithmetic;
  }
}

}  // namespace logbal::cli
