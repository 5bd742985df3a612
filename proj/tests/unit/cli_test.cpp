#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "commands.hpp"
#include "doctest.h"
#include "serialize.hpp"

using namespace heiscone;
using namespace heiscone::tools;

namespace {

namespace fs = std::filesystem;

fs::path temp_file(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "heiscone_cli_test";
  fs::create_directories(dir);
  return dir / name;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream ss(text);
  std::string line;
  while (std::getline(ss, line)) out.push_back(line);
  return out;
}

// Runs a command with std::cout captured; connect always prints its JSON.
template <class Fn>
int with_captured_stdout(Fn&& fn, std::string* captured) {
  std::ostringstream cap;
  std::streambuf* old = std::cout.rdbuf(cap.rdbuf());
  int code = 1;
  try {
    code = fn();
  } catch (...) {
    std::cout.rdbuf(old);
    throw;
  }
  std::cout.rdbuf(old);
  *captured = cap.str();
  return code;
}

TraceRequest arc_request() {
  TraceRequest req;
  req.space = "cone";
  req.base = {0, 0, 0, 1};
  req.dir = {0, 0, 1, 0};
  req.s_start = 0.0;
  req.s_end = 3.0;
  req.n = 301;
  return req;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("g17 formatting round-trips doubles") {
  for (const double v : {0.0, 1.0, -0.1, std::acos(-1.0), std::sqrt(2.0),
                         -0.25365296808863663, 1e-17, 1e300, 2.5 * std::acos(-1.0)}) {
    CHECK(std::stod(format_g17(v)) == v);
  }
  CHECK(format_g17(1.0) == "1");
  CHECK(format_g17(0.5) == "0.5");
}

TEST_CASE("csv layout: optional columns and the breach marker") {
  TraceDoc doc;
  doc.space = "heisenberg";
  doc.method = "closed";
  TraceRowOut r0;
  TraceRowOut r1;
  r1.s = 1.0;
  r1.x = 1.0;
  r1.f = 1.0;
  doc.rows = {r0, r1};
  std::ostringstream heis;
  write_csv(heis, doc);
  CHECK(heis.str() ==
        "s,x,y,t,f,g,h,speed_err\n"
        "0,0,0,0,0,0,0,0\n"
        "1,1,0,0,1,0,0,0\n");

  TraceDoc cone;
  cone.space = "cone";
  cone.method = "both";
  cone.with_r = true;
  cone.with_dev = true;
  TraceRowOut c0;
  c0.r = 1.0;
  c0.k = -1.0;
  cone.rows = {c0};
  cone.breached = true;
  cone.breach_s = 1.0;
  std::ostringstream os;
  write_csv(os, cone);
  CHECK(os.str() ==
        "s,x,y,t,r,f,g,h,k,speed_err,dev\n"
        "0,0,0,0,1,0,0,0,-1,0,0\n"
        "# breach s=1\n");
}

TEST_CASE("json layouts carry ordered keys and null infinities") {
  ValidationReport rep;
  rep.suite = "structures";
  rep.seed = 42;
  rep.n_samples = 3;
  rep.add_check("alpha", 1e-14, 1e-12);
  rep.notes.push_back("note");
  const Json j = to_json(rep);
  std::vector<std::string> keys;
  for (const auto& item : j.items()) keys.push_back(item.key());
  CHECK(keys == std::vector<std::string>{"suite", "seed", "n_samples", "passed",
                                         "checks", "notes"});
  CHECK(j["passed"] == true);
  CHECK(j["checks"][0]["name"] == "alpha");

  const ConeGeodesic rad =
      cone_geodesic_from_ic({0, 0, 0, 1}, {0, 0, 0, -1});
  const Json g = to_json(rad);
  CHECK(g["case"] == "radial");
  CHECK(g["domain"]["s_min"].is_null());
  CHECK(g["domain"]["s_max"] == 1.0);
  CHECK(g["base"]["r"] == 1.0);
}

TEST_CASE("trace command: files, sample counts, deviation column") {
  const fs::path csv = temp_file("heis_line.csv");
  TraceRequest req;
  req.base = {0, 0, 0};
  req.dir = {1, 0, 0};
  req.s_start = 0.0;
  req.s_end = 2.0;
  req.n = 5;
  req.out = csv.string();
  CHECK(cmd_trace(req) == 0);
  const auto rows = lines_of(slurp(csv));
  REQUIRE(rows.size() == 6);
  CHECK(rows[0] == "s,x,y,t,f,g,h,speed_err");
  CHECK(rows[5].substr(0, 4) == "2,2,");

  // rk4 and both agree with the closed form on the arc example.
  TraceRequest arc = arc_request();
  arc.method = "both";
  arc.format = "json";
  const fs::path aj = temp_file("arc_both.json");
  arc.out = aj.string();
  CHECK(cmd_trace(arc) == 0);
  const Json doc = Json::parse(slurp(aj));
  CHECK(doc["space"] == "cone");
  CHECK(doc["breach"].is_null());
  const auto& cols = doc["columns"];
  REQUIRE(cols.back() == "dev");
  double max_dev = 0.0;
  for (const auto& row : doc["rows"]) {
    max_dev = std::max(max_dev, row.back().get<double>());
  }
  CHECK(max_dev <= 1e-6);
  CHECK(doc["rows"].size() == 301);
}

TEST_CASE("trace command: breach exit and marker") {
  TraceRequest req;
  req.space = "cone";
  req.base = {0, 0, 0, 1};
  req.dir = {0, 0, 0, -1};
  req.s_start = 0.0;
  req.s_end = 2.0;
  req.n = 21;
  const fs::path csv = temp_file("radial_breach.csv");
  req.out = csv.string();
  CHECK(cmd_trace(req) == 2);
  const auto rows = lines_of(slurp(csv));
  REQUIRE(!rows.empty());
  const std::string& marker = rows.back();
  REQUIRE(marker.rfind("# breach s=", 0) == 0);
  CHECK(std::abs(std::stod(marker.substr(11)) - 1.0) <= 1e-6);

  req.format = "json";
  const fs::path js = temp_file("radial_breach.json");
  req.out = js.string();
  CHECK(cmd_trace(req) == 2);
  const Json doc = Json::parse(slurp(js));
  REQUIRE(doc["breach"].is_object());
  CHECK(std::abs(doc["breach"]["s"].get<double>() - 1.0) <= 1e-6);
}

TEST_CASE("trace command rejects malformed requests") {
  TraceRequest req;
  req.base = {0, 0, 0};
  req.dir = {1, 0, 0};

  TraceRequest bad = req;
  bad.dir = {0.5, 0, 0};  // not unit
  CHECK(cmd_trace(bad) == 1);
  bad = req;
  bad.base = {0, 0};  // wrong dimension
  CHECK(cmd_trace(bad) == 1);
  bad = req;
  bad.space = "cone";  // cone needs 4 coordinates
  CHECK(cmd_trace(bad) == 1);
  bad = req;
  bad.s_start = 1.0;
  bad.s_end = 1.0;
  CHECK(cmd_trace(bad) == 1);
  bad = req;
  bad.n = 1;
  CHECK(cmd_trace(bad) == 1);
  bad = req;
  bad.method = "euler";
  CHECK(cmd_trace(bad) == 1);
  bad = req;
  bad.format = "xml";
  CHECK(cmd_trace(bad) == 1);
  bad = req;
  bad.step = 0.0;
  CHECK(cmd_trace(bad) == 1);
  bad = req;
  bad.out = "/nonexistent_dir_zz/never.csv";
  CHECK(cmd_trace(bad) == 1);
}

TEST_CASE("validate command: pass status and byte determinism") {
  ReportRequest req;
  req.suite = "structures";
  req.seed = 9;
  req.n = 100;
  const fs::path f1 = temp_file("report1.json");
  const fs::path f2 = temp_file("report2.json");
  req.out = f1.string();
  CHECK(cmd_validate(req) == 0);
  req.out = f2.string();
  CHECK(cmd_validate(req) == 0);
  const std::string a = slurp(f1);
  CHECK(a == slurp(f2));
  const Json rep = Json::parse(a);
  CHECK(rep["suite"] == "structures");
  CHECK(rep["passed"] == true);
  CHECK(rep["seed"] == 9);

  ReportRequest bad;
  bad.suite = "nonsense";
  CHECK(cmd_validate(bad) == 1);
  bad = req;
  bad.n = 0;
  CHECK(cmd_validate(bad) == 1);
}

TEST_CASE("connect command: JSON result and exit codes") {
  ConnectRequest req;
  req.p = {0, 0, 0, 1};
  req.q = {0, 0, 0, 3};
  const fs::path out = temp_file("connect.json");
  req.out = out.string();
  std::string printed;
  CHECK(with_captured_stdout([&] { return cmd_connect(req); }, &printed) == 0);
  const Json doc = Json::parse(printed);
  CHECK(doc["converged"] == true);
  CHECK(std::abs(doc["s_star"].get<double>() - 2.0) <= 1e-10);
  CHECK(doc["geodesic"]["case"] == "radial");
  CHECK(slurp(out) == printed);

  // Unreachable tolerance: exit 3 with the best iterate reported.
  ConnectRequest stuck;
  stuck.p = {0.1, -0.2, 0.3, 1.0};
  stuck.q = {0.4, 0.25, -0.7, 1.6};
  stuck.tol = 1e-20;
  CHECK(with_captured_stdout([&] { return cmd_connect(stuck); }, &printed) == 3);
  const Json sd = Json::parse(printed);
  CHECK(sd["converged"] == false);
  CHECK(sd["residual"].get<double>() <= 1e-8);

  ConnectRequest bad;
  bad.p = {0, 0, 0};
  bad.q = {0, 0, 0, 1};
  CHECK(with_captured_stdout([&] { return cmd_connect(bad); }, &printed) == 1);
  bad.p = {0, 0, 0, -1};
  CHECK(with_captured_stdout([&] { return cmd_connect(bad); }, &printed) == 1);
}

}  // TEST_SUITE("cli")
