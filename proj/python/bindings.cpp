#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "logbal/analysis.hpp"
#include "logbal/catalog.hpp"
#include "logbal/certify.hpp"
#include "logbal/cli.hpp"
#include "logbal/recdsl.hpp"
#include "logbal/report.hpp"

namespace py = pybind11;

namespace {

std::vector<std::string> as_strings(const std::vector<logbal::Rational>& v) {
  std::vector<std::string> out;
  out.reserve(v.size());
  for (const auto& r : v) out.push_back(r.to_string());
  return out;
}

logbal::Recurrence load(const std::string& text, bool catalog) {
  return catalog ? logbal::catalog_get(text).recurrence : logbal::parse_recurrence(text);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact certificates of log-convexity and log-balancedness";

  auto base = py::register_exception<logbal::Error>(m, "LogbalError");
  py::register_exception<logbal::ParseError>(m, "ParseError", base);
  py::register_exception<logbal::LookupError>(m, "LookupError", base);
  py::register_exception<logbal::RecurrenceError>(m, "RecurrenceError", base);
  py::register_exception<logbal::AnalysisError>(m, "AnalysisError", base);
  py::register_exception<logbal::ArithmeticError>(m, "ArithmeticError", base);

  m.def("version", &logbal::tool_version);

  m.def("normalize", [](const std::string& text) { return logbal::format_recurrence(logbal::parse_recurrence(text)); },
        py::arg("text"));

  m.def("terms",
        [](const std::string& text, std::size_t count, bool catalog) {
          auto tab = logbal::compute_terms(load(text, catalog), count);
          return py::make_tuple(tab.offset, as_strings(tab.terms));
        },
        py::arg("text"), py::arg("count"), py::arg("catalog") = false);

  m.def("classify",
        [](const std::string& text, std::size_t window, bool catalog) {
          auto c = logbal::classify(logbal::compute_terms(load(text, catalog), window));
          return logbal::classification_to_json(c);
        },
        py::arg("text"), py::arg("window") = 30, py::arg("catalog") = false);

  m.def("certify",
        [](const std::string& text, bool catalog, logbal::Index max_base, logbal::Index probe_window) {
          logbal::CertifyOptions opts;
          opts.max_base = max_base;
          opts.probe_window = probe_window;
          auto rec = load(text, catalog);
          logbal::Report rep;
          {
            py::gil_scoped_release release;
            rep = logbal::certify_pipeline(rec, opts);
          }
          return logbal::report_to_json(rep, catalog ? "catalog:" + text : "inline");
        },
        py::arg("text"), py::arg("catalog") = false, py::arg("max_base") = 200, py::arg("probe_window") = 30);

  m.def("replay",
        [](const std::string& json) {
          auto r = logbal::replay_report_json(json);
          return py::make_tuple(r.ok, r.tails_checked, r.base_cases_checked, r.problems);
        },
        py::arg("report_json"));

  m.def("catalog_names", &logbal::catalog_all_names);
  m.def("catalog_recurrence", [](const std::string& name) { return logbal::format_recurrence(logbal::catalog_get(name).recurrence); });
  m.def("oracle", [](const std::string& name, logbal::Index n) { return logbal::oracle_eval(name, n).to_string(); });

  m.def("run_cli", [](const std::vector<std::string>& args) {
    std::ostringstream out, err;
    int code = logbal::cli::run(args, out, err);
    return py::make_tuple(code, out.str(), err.str());
  });
}
