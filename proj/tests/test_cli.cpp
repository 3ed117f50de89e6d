#include <doctest.h>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "logbal/cli.hpp"
#include "logbal/report.hpp"

using nlohmann::json;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = logbal::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("compute") {
  auto r = run({"compute", "--inline", "a[n] = 2*a[n-1]; a[0]=1", "--terms", "4"});
  CHECK(r.code == 0);
  CHECK(r.out == "1\n2\n4\n8\n");
  r = run({"compute", "--catalog", "apery", "--terms", "3", "--format", "json"});
  CHECK(r.code == 0);
  CHECK(json::parse(r.out) == json::array({"1", "5", "73"}));
  r = run({"--format", "json", "compute", "--inline", "a[n] = a[n-1]/2; a[0]=1", "--terms", "3"});
  CHECK(json::parse(r.out) == json::array({"1", "1/2", "1/4"}));
}

TEST_CASE("rec files") {
  const std::string path = "test_cli_tmp.rec";
  {
    std::ofstream f(path);
    f << "# Catalan numbers\na[n] = (4*n - 2)/(n + 1) * a[n-1]\n; a[0] = 1\n";
  }
  auto r = run({"compute", "--rec", path, "--terms", "6"});
  std::remove(path.c_str());
  CHECK(r.code == 0);
  CHECK(r.out == "1\n1\n2\n5\n14\n42\n");
  CHECK(run({"compute", "--rec", "/nonexistent/x.rec"}).code == 2);
}

TEST_CASE("certify motzkin as json") {
  auto r = run({"certify", "--catalog", "motzkin", "--format", "json"});
  CHECK(r.code == 0);
  auto j = json::parse(r.out);
  for (const char* key : {"tool_version", "input", "verdict", "certificates", "failures", "terms_prefix"})
    CHECK(j.contains(key));
  CHECK(j["verdict"] == "log_balanced");
  bool found = false;
  for (const auto& c : j["certificates"]) {
    if (c["property"] != "log_balanced") continue;
    found = true;
    CHECK(c["bounds"]["m"] == "2");
    CHECK(c["bounds"]["M"] == "7/2");
  }
  CHECK(found);
  CHECK(logbal::replay_report_json(r.out).ok);
}

TEST_CASE("negative results exit with 1") {
  auto r = run({"certify", "--catalog", "factorial_shift_down"});
  CHECK(r.code == 1);
  CHECK(r.out.find("counterexample") != std::string::npos);
  auto j = json::parse(run({"certify", "--catalog", "factorial_shift_down", "--format", "json"}).out);
  bool delta = false;
  for (const auto& f : j["failures"])
    if (f["stage"] == "log_balanced" && f["reason"] == "tail") delta = true;
  CHECK(delta);
}

TEST_CASE("property selection changes the exit code") {
  CHECK(run({"certify", "--catalog", "factorial_squared", "--property", "log_convex"}).code == 0);
  CHECK(run({"certify", "--catalog", "factorial_squared"}).code == 1);
}

TEST_CASE("bounds overrides") {
  auto r = run({"certify", "--catalog", "franel4", "--bounds", "11,18", "--from", "4", "--format", "json"});
  CHECK(r.code == 0);
  r = run({"certify", "--catalog", "polyomino_dcc", "--bounds-affine", "1,1,1,2", "--from", "2"});
  CHECK(r.code == 0);
  r = run({"certify", "--catalog", "motzkin", "--bounds", "5/2,7/2", "--from", "2"});
  CHECK(r.code == 1);
  CHECK(run({"certify", "--catalog", "motzkin", "--bounds", "2"}).code == 2);
  CHECK(run({"certify", "--catalog", "motzkin", "--bounds", "2,3", "--bounds-affine", "1,1,1,2"}).code == 2);
}

TEST_CASE("usage and input errors exit with 2") {
  CHECK(run({}).code == 2);
  CHECK(run({"compute"}).code == 2);
  CHECK(run({"compute", "--catalog", "motzkin", "--inline", "a[n]=a[n-1];a[0]=1"}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"compute", "--catalog", "nope"}).code == 2);
  auto r = run({"compute", "--inline", "a[n] = 2*a[n-1"});
  CHECK(r.code == 2);
  CHECK(r.err.find("1:15") != std::string::npos);
  CHECK(run({"compute", "--inline", "a[n] = a[n-1]/(n-2); a[0]=1"}).code == 2);
  CHECK(run({"classify", "--inline", "a[n] = -a[n-1]; a[0]=1"}).code == 2);
  CHECK(run({"certify", "--catalog", "motzkin", "--format", "xml"}).code == 2);
  CHECK(run({"catalog", "frob"}).code == 2);
}

TEST_CASE("classify") {
  auto r = run({"classify", "--catalog", "motzkin", "--window", "40", "--prop1", "--max-sum", "30", "--format", "json"});
  CHECK(r.code == 0);
  auto j = json::parse(r.out);
  CHECK(j["verdict"] == "log_convex");
  CHECK(j["prop1"]["part_a_violations"].empty());
  CHECK(j["prop1"]["part_b_violations"].empty());
  r = run({"classify", "--inline", "a[n] = a[n-1] + a[n-2]; a[0]=1; a[1]=1"});
  CHECK(r.out.find("log_fibonacci") != std::string::npos);
}

TEST_CASE("catalog list and show") {
  auto r = run({"catalog", "list"});
  CHECK(r.code == 0);
  CHECK(r.out.find("motzkin") != std::string::npos);
  CHECK(r.out.find("7/2") != std::string::npos);
  r = run({"catalog", "show", "baxter", "--format", "json"});
  CHECK(r.code == 0);
  CHECK(json::parse(r.out)["expected_bounds"]["n0"] == 47);
  CHECK(run({"catalog", "show", "legendre:5/2"}).code == 0);
  CHECK(run({"catalog", "show", "zzz"}).code == 2);
}

TEST_CASE("catalog all is deterministic and replayable") {
  auto a = run({"certify", "--catalog", "all", "--format", "json"});
  auto b = run({"certify", "--catalog", "all", "--format", "json"});
  CHECK(a.out == b.out);
  CHECK(a.code == 1);
  auto arr = json::parse(a.out);
  REQUIRE(arr.size() == 16);
  std::vector<std::string> names;
  for (const auto& rep : arr) {
    names.push_back(rep["input"]["source"]);
    auto replay = logbal::replay_report_json(rep.dump());
    CHECK(replay.ok);
  }
  CHECK(std::is_sorted(names.begin(), names.end()));
}

TEST_CASE("help and version") {
  auto r = run({"--help"});
  CHECK(r.code == 0);
  CHECK(r.out.find("certify") != std::string::npos);
  CHECK(run({"--version"}).code == 0);
}
