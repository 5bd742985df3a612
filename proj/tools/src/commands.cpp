#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <stdexcept>

#include "heiscone/analysis.hpp"
#include "serialize.hpp"

namespace heiscone::tools {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

int write_to(const std::string& path,
             const std::function<void(std::ostream&)>& emit) {
  if (path.empty()) {
    emit(std::cout);
    std::cout.flush();
    return std::cout.good() ? 0 : 1;
  }
  std::ofstream os(path, std::ios::binary);  // binary keeps LF endings
  if (!os) {
    std::cerr << "error: cannot open output path '" << path << "'\n";
    return 1;
  }
  emit(os);
  os.flush();
  if (!os.good()) {
    std::cerr << "error: write failed for '" << path << "'\n";
    return 1;
  }
  return 0;
}

std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> out(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    out[static_cast<std::size_t>(i)] =
        a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1);
  }
  out.front() = a;
  out.back() = b;
  return out;
}

/// Nudges s onto [lo, hi] when it misses by rounding slack only.
bool clamp_into(double* s, double lo, double hi) {
  const double slack =
      1e-12 * std::max({1.0, std::abs(lo), std::abs(hi), std::abs(*s)});
  if (*s < lo) {
    if (lo - *s > slack) return false;
    *s = lo;
  } else if (*s > hi) {
    if (*s - hi > slack) return false;
    *s = hi;
  }
  return true;
}

void validate_common(const TraceRequest& req, std::size_t dim) {
  if (req.base.size() != dim) {
    throw std::invalid_argument("base point needs " + std::to_string(dim) +
                                " comma-separated coordinates");
  }
  if (req.dir.size() != dim) {
    throw std::invalid_argument("direction needs " + std::to_string(dim) +
                                " comma-separated frame components");
  }
  if (req.n < 2) throw std::invalid_argument("sample count must be >= 2");
  if (!(req.s_start < req.s_end)) {
    throw std::invalid_argument("parameter range needs s_start < s_end");
  }
  if (req.method != "closed" && req.method != "rk4" && req.method != "both") {
    throw std::invalid_argument("method must be closed, rk4 or both");
  }
  if (req.format != "csv" && req.format != "json") {
    throw std::invalid_argument("format must be csv or json");
  }
  if (!(req.step > 0.0)) throw std::invalid_argument("step must be positive");
}

int emit_doc(const TraceRequest& req, const TraceDoc& doc) {
  const int rc = write_to(req.out, [&](std::ostream& os) {
    if (req.format == "csv") {
      write_csv(os, doc);
    } else {
      write_json(os, to_json(doc));
    }
  });
  if (rc != 0) return 1;
  return doc.breached ? 2 : 0;
}

int trace_heis(const TraceRequest& req) {
  validate_common(req, 3);
  const HeisPoint p0{req.base[0], req.base[1], req.base[2]};
  const FrameVecH v0{req.dir[0], req.dir[1], req.dir[2]};
  if (!is_unit(v0)) {
    throw std::invalid_argument(
        "initial direction must be unit in the frame metric (got |v| = " +
        format_g17(norm(v0)) + ")");
  }
  const bool want_closed = req.method != "rk4";
  const bool want_num = req.method != "closed";

  HeisGeodesic geo;
  if (want_closed) geo = heis_geodesic_from_ic(p0, v0);

  HeisTrace fwd, bwd;
  bool have_fwd = false, have_bwd = false;
  double speed0 = 1.0;
  if (want_num) {
    const StepPolicy policy = StepPolicy::fixed(req.step);
    const HeisState st0 = make_state(p0, v0);
    speed0 = speed(st0);
    if (req.s_end > 0.0) {
      fwd = integrate(heis_rhs, st0, req.s_end, policy);
      have_fwd = true;
    }
    if (req.s_start < 0.0) {
      bwd = integrate(heis_rhs, st0, req.s_start, policy);
      have_bwd = true;
    }
  }

  TraceDoc doc;
  doc.space = "heisenberg";
  doc.method = req.method;
  for (double s : linspace(req.s_start, req.s_end, req.n)) {
    TraceRowOut row;
    HeisState num;
    if (want_num) {
      const HeisTrace& side = (s >= 0.0 && have_fwd) ? fwd : bwd;
      double sc = s;
      clamp_into(&sc, std::min(side.s_front(), side.s_back()),
                 std::max(side.s_front(), side.s_back()));
      num = resample(side, {sc}).rows.front().state;
      row.speed_err = std::abs(speed(num) - speed0);
    }
    row.s = s;
    if (want_closed) {
      const HeisPoint p = heis_geodesic_eval(geo, s);
      const FrameVecH v = heis_geodesic_velocity(geo, s);
      row.x = p.x;
      row.y = p.y;
      row.t = p.t;
      row.f = v.f;
      row.g = v.g;
      row.h = v.h;
      if (!want_num) row.speed_err = std::abs(norm(v) - 1.0);
      if (want_num) {
        row.dev = std::max({std::abs(p.x - num.x), std::abs(p.y - num.y),
                            std::abs(p.t - num.t), std::abs(v.f - num.f),
                            std::abs(v.g - num.g), std::abs(v.h - num.h)});
      }
    } else {
      row.x = num.x;
      row.y = num.y;
      row.t = num.t;
      row.f = num.f;
      row.g = num.g;
      row.h = num.h;
    }
    doc.rows.push_back(row);
  }
  doc.with_dev = req.method == "both";
  return emit_doc(req, doc);
}

int trace_cone(const TraceRequest& req) {
  validate_common(req, 4);
  const ConePoint q0{req.base[0], req.base[1], req.base[2], req.base[3]};
  const FrameVecC v0{req.dir[0], req.dir[1], req.dir[2], req.dir[3]};
  if (!is_unit(v0)) {
    throw std::invalid_argument(
        "initial direction must be unit in the frame metric (got |v| = " +
        format_g17(norm(v0)) + ")");
  }
  const bool want_closed = req.method != "rk4";
  const bool want_num = req.method != "closed";

  ConeGeodesic geo;
  GeodesicDomain dom{-kInf, kInf};
  if (want_closed) {
    geo = cone_geodesic_from_ic(q0, v0);
    dom = geodesic_domain(geo);
  }

  ConeTrace fwd, bwd;
  bool have_fwd = false, have_bwd = false;
  double speed0 = 1.0;
  if (want_num) {
    const StepPolicy policy = StepPolicy::fixed(req.step);
    const ConeState st0 = make_state(q0, v0);
    speed0 = speed(st0);
    if (req.s_end > 0.0) {
      fwd = integrate(cone_rhs, st0, req.s_end, policy);
      have_fwd = true;
    }
    if (req.s_start < 0.0) {
      bwd = integrate(cone_rhs, st0, req.s_start, policy);
      have_bwd = true;
    }
  }

  TraceDoc doc;
  doc.space = "cone";
  doc.method = req.method;
  doc.with_r = true;
  doc.with_dev = req.method == "both";
  for (double s : linspace(req.s_start, req.s_end, req.n)) {
    // A sample outside the maximal domain (closed form) or the integrated
    // range (numeric breach) flags the document instead of producing a row.
    double bound = 0.0;
    bool ok = true;
    if (want_closed && !dom.contains(s)) {
      bound = (s >= dom.s_max) ? dom.s_max : dom.s_min;
      ok = false;
    }
    ConeState num;
    double sc = s;
    if (ok && want_num) {
      const ConeTrace& side = (s >= 0.0 && have_fwd) ? fwd : bwd;
      const double lo = std::min(side.s_front(), side.s_back());
      const double hi = std::max(side.s_front(), side.s_back());
      if (!clamp_into(&sc, lo, hi)) {
        ok = false;
        bound = side.breached ? side.breach_s : (s > hi ? hi : lo);
      } else {
        num = resample(side, {sc}).rows.front().state;
      }
    }
    if (!ok) {
      if (!doc.breached) {
        doc.breached = true;
        doc.breach_s = bound;
      }
      continue;
    }
    TraceRowOut row;
    row.s = s;
    if (want_num) row.speed_err = std::abs(speed(num) - speed0);
    if (want_closed) {
      const ConePoint p = cone_geodesic_eval(geo, s);
      const FrameVecC v = cone_geodesic_velocity(geo, s);
      row.x = p.x;
      row.y = p.y;
      row.t = p.t;
      row.r = p.r;
      row.f = v.f;
      row.g = v.g;
      row.h = v.h;
      row.k = v.k;
      if (!want_num) row.speed_err = std::abs(norm(v) - 1.0);
      if (want_num) {
        row.dev = std::max({std::abs(p.x - num.x), std::abs(p.y - num.y),
                            std::abs(p.t - num.t), std::abs(p.r - num.r),
                            std::abs(v.f - num.f), std::abs(v.g - num.g),
                            std::abs(v.h - num.h), std::abs(v.k - num.k)});
      }
    } else {
      row.x = num.x;
      row.y = num.y;
      row.t = num.t;
      row.r = num.r;
      row.f = num.f;
      row.g = num.g;
      row.h = num.h;
      row.k = num.k;
    }
    doc.rows.push_back(row);
  }
  return emit_doc(req, doc);
}

}  // namespace

int cmd_trace(const TraceRequest& req) {
  try {
    if (req.space == "heisenberg") return trace_heis(req);
    if (req.space == "cone") return trace_cone(req);
    throw std::invalid_argument("space must be heisenberg or cone");
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

int cmd_validate(const ReportRequest& req) {
  try {
    if (req.format != "json") {
      throw std::invalid_argument("validate output format must be json");
    }
    ValidationReport rep;
    if (req.suite == "structures") {
      rep = structure_validate(req.n, req.seed);
    } else if (req.suite == "geodesics") {
      rep = run_suite_geodesics(req.seed);
    } else if (req.suite == "completeness") {
      rep = run_suite_completeness(req.seed);
    } else if (req.suite == "all") {
      rep = run_suite_all(req.seed);
    } else {
      throw std::invalid_argument(
          "suite must be structures, geodesics, completeness or all");
    }
    const int rc = write_to(req.out, [&](std::ostream& os) {
      write_json(os, to_json(rep));
    });
    if (rc != 0) return 1;
    return rep.passed() ? 0 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

int cmd_connect(const ConnectRequest& req) {
  try {
    if (req.p.size() != 4 || req.q.size() != 4) {
      throw std::invalid_argument(
          "cone points need 4 comma-separated coordinates x,y,t,r");
    }
    const ConePoint p{req.p[0], req.p[1], req.p[2], req.p[3]};
    const ConePoint q{req.q[0], req.q[1], req.q[2], req.q[3]};
    if (!(p.r > 0.0) || !(q.r > 0.0)) {
      throw std::invalid_argument("cone points need r > 0");
    }
    const ShootingResult sr = connect_shooting(p, q, req.max_iter, req.tol);
    const Json j = to_json(sr);
    write_json(std::cout, j);
    if (!req.out.empty()) {
      const int rc = write_to(req.out, [&](std::ostream& os) {
        write_json(os, j);
      });
      if (rc != 0) return 1;
    }
    return sr.converged ? 0 : 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace heiscone::tools
