#include "serialize.hpp"

#include <cmath>
#include <cstdio>

namespace heiscone::tools {

namespace {

// Infinite interval ends become nulls; JSON has no literal for them.
Json finite_or_null(double v) {
  if (std::isfinite(v)) return Json(v);
  return Json(nullptr);
}

}  // namespace

std::string format_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_csv(std::ostream& os, const TraceDoc& doc) {
  os << "s,x,y,t";
  if (doc.with_r) os << ",r";
  os << ",f,g,h";
  if (doc.with_r) os << ",k";
  os << ",speed_err";
  if (doc.with_dev) os << ",dev";
  os << "\n";
  for (const auto& row : doc.rows) {
    os << format_g17(row.s) << ',' << format_g17(row.x) << ','
       << format_g17(row.y) << ',' << format_g17(row.t);
    if (doc.with_r) os << ',' << format_g17(row.r);
    os << ',' << format_g17(row.f) << ',' << format_g17(row.g) << ','
       << format_g17(row.h);
    if (doc.with_r) os << ',' << format_g17(row.k);
    os << ',' << format_g17(row.speed_err);
    if (doc.with_dev) os << ',' << format_g17(row.dev);
    os << "\n";
  }
  if (doc.breached) {
    os << "# breach s=" << format_g17(doc.breach_s) << "\n";
  }
}

Json to_json(const TraceDoc& doc) {
  Json j;
  j["space"] = doc.space;
  j["method"] = doc.method;
  j["columns"] = [&] {
    Json cols = Json::array();
    cols.push_back("s");
    cols.push_back("x");
    cols.push_back("y");
    cols.push_back("t");
    if (doc.with_r) cols.push_back("r");
    cols.push_back("f");
    cols.push_back("g");
    cols.push_back("h");
    if (doc.with_r) cols.push_back("k");
    cols.push_back("speed_err");
    if (doc.with_dev) cols.push_back("dev");
    return cols;
  }();
  Json rows = Json::array();
  for (const auto& row : doc.rows) {
    Json r = Json::array();
    r.push_back(row.s);
    r.push_back(row.x);
    r.push_back(row.y);
    r.push_back(row.t);
    if (doc.with_r) r.push_back(row.r);
    r.push_back(row.f);
    r.push_back(row.g);
    r.push_back(row.h);
    if (doc.with_r) r.push_back(row.k);
    r.push_back(row.speed_err);
    if (doc.with_dev) r.push_back(row.dev);
    rows.push_back(std::move(r));
  }
  j["rows"] = std::move(rows);
  if (doc.breached) {
    j["breach"] = Json{{"s", doc.breach_s}};
  } else {
    j["breach"] = nullptr;
  }
  return j;
}

Json to_json(const ValidationReport& rep) {
  Json j;
  j["suite"] = rep.suite;
  j["seed"] = rep.seed;
  j["n_samples"] = rep.n_samples;
  j["passed"] = rep.passed();
  Json checks = Json::array();
  for (const auto& c : rep.checks) {
    Json e;
    e["name"] = c.name;
    e["residual"] = c.residual;
    e["tolerance"] = c.tolerance;
    e["pass"] = c.pass;
    checks.push_back(std::move(e));
  }
  j["checks"] = std::move(checks);
  j["notes"] = rep.notes;
  return j;
}

Json to_json(const ConeGeodesic& geo) {
  Json j;
  j["case"] = to_string(geo.kind);
  j["base"] = Json{{"x", geo.base.x},
                   {"y", geo.base.y},
                   {"t", geo.base.t},
                   {"r", geo.base.r}};
  j["c1"] = geo.c1;
  j["c3"] = geo.c3;
  j["C"] = Json{{"re", geo.C.real()}, {"im", geo.C.imag()}};
  j["phi0"] = geo.phi0;
  j["a"] = geo.a;
  const GeodesicDomain dom = geodesic_domain(geo);
  j["domain"] = Json{{"s_min", finite_or_null(dom.s_min)},
                     {"s_max", finite_or_null(dom.s_max)}};
  return j;
}

Json to_json(const ShootingResult& result) {
  Json j;
  j["converged"] = result.converged;
  j["direction"] = Json{{"f", result.direction.f},
                        {"g", result.direction.g},
                        {"h", result.direction.h},
                        {"k", result.direction.k}};
  j["s_star"] = result.s_star;
  j["residual"] = result.residual;
  j["iterations"] = result.iterations;
  j["geodesic"] = to_json(result.geodesic);
  return j;
}

void write_json(std::ostream& os, const Json& j) {
  os << j.dump(2) << "\n";
}

}  // namespace heiscone::tools
