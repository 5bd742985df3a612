#include <cmath>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "helpers.hpp"
#include "heiscone/geodesics.hpp"
#include "heiscone/integrate.hpp"

using namespace heiscone;

namespace {

const double kPi = std::acos(-1.0);
const double kSqrt3 = std::sqrt(3.0);

double state_dist(const HeisState& a, const HeisState& b) {
  return std::max({std::abs(a.x - b.x), std::abs(a.y - b.y),
                   std::abs(a.t - b.t), std::abs(a.f - b.f),
                   std::abs(a.g - b.g), std::abs(a.h - b.h)});
}

double state_dist(const ConeState& a, const ConeState& b) {
  return std::max({std::abs(a.x - b.x), std::abs(a.y - b.y),
                   std::abs(a.t - b.t), std::abs(a.r - b.r),
                   std::abs(a.f - b.f), std::abs(a.g - b.g),
                   std::abs(a.h - b.h), std::abs(a.k - b.k)});
}

HeisState helix_ic() {
  return make_state(HeisPoint{0, 0, 0}, FrameVecH{kSqrt3 / 2, 0, 0.5});
}

double helix_final_error(double step) {
  const HeisGeodesic geo =
      heis_geodesic_from_ic({0, 0, 0}, {kSqrt3 / 2, 0, 0.5});
  const HeisTrace tr = integrate(heis_rhs, helix_ic(), kPi, StepPolicy::fixed(step));
  const HeisPoint want = heis_geodesic_eval(geo, kPi);
  const HeisState& b = tr.rows.back().state;
  return std::max({std::abs(b.x - want.x), std::abs(b.y - want.y),
                   std::abs(b.t - want.t)});
}

double cone_final_error(double step) {
  const ConePoint q0{0, 0, 0, 1};
  const FrameVecC v0{kSqrt3 / 2, 0, 0.5, 0};
  const ConeGeodesic geo = cone_geodesic_from_ic(q0, v0);
  const ConeTrace tr =
      integrate(cone_rhs, make_state(q0, v0), 1.0, StepPolicy::fixed(step));
  const ConePoint want = cone_geodesic_eval(geo, 1.0);
  const ConeState& b = tr.rows.back().state;
  return std::max({std::abs(b.x - want.x), std::abs(b.y - want.y),
                   std::abs(b.t - want.t), std::abs(b.r - want.r)});
}

}  // namespace

TEST_SUITE("integrate") {

TEST_CASE("right-hand sides: pinned derivatives") {
  const HeisState h1 = heis_rhs({0, 0, 0, 1, 0, 0});
  CHECK(h1.x == 1.0);
  CHECK(h1.y == 0.0);
  CHECK(h1.t == 0.0);
  CHECK(h1.f == 0.0);
  const HeisState h2 = heis_rhs({0, 0, 0, 0, 0, 1});
  CHECK(h2.t == 2.0);  // tdot = 2h at the origin
  const HeisState h3 = heis_rhs({0, 0, 0, kSqrt3 / 2, 0, 0.5});
  CHECK(h3.x == kSqrt3 / 2);
  CHECK(h3.t == 1.0);
  CHECK(h3.f == 0.0);              // fdot = 2gh, g = 0
  CHECK(h3.g == -kSqrt3 / 2);      // gdot = -2fh
  CHECK(h3.h == 0.0);
  // Away from the origin the t-equation picks up the frame correction.
  const HeisState h4 = heis_rhs({1, 2, 0, 0.5, -0.5, 0.25});
  CHECK(h4.t == 2.0 * 0.25 - 2.0 * 1.0 * (-0.5) + 2.0 * 2.0 * 0.5);

  const ConeState c1 = cone_rhs({0, 0, 0, 1, 0, 0, 0, 1});
  CHECK(c1.r == 1.0);
  CHECK(c1.k == 0.0);  // k = 1 is stationary: kdot = (1 - k^2)/r
  const ConeState c2 = cone_rhs({0, 0, 0, 1, 0, 0, 1, 0});
  CHECK(c2.t == 2.0);
  CHECK(c2.k == 1.0);
  CHECK(c2.h == 0.0);  // hdot = -kh/r
  const ConeState c3 = cone_rhs({0, 0, 0, 2, 0, 0, 0, -1});
  CHECK(c3.r == -1.0);
  CHECK(c3.k == 0.0);
  CHECK(c3.x == 0.0);

  CHECK_THROWS_AS(cone_rhs({0, 0, 0, 1e-10, 0, 0, 0, 1}), std::domain_error);
}

TEST_CASE("state packing helpers") {
  const ConePoint q{0.1, 0.2, 0.3, 1.5};
  const FrameVecC v{0.5, -0.5, 0.5, 0.5};
  const ConeState s = make_state(q, v);
  CHECK(s.r == q.r);
  CHECK(s.k == v.k);
  const ConePoint q2 = point_of(s);
  CHECK(q2.t == q.t);
  const FrameVecC v2 = velocity_of(s);
  CHECK(norm(v2 - v) == 0.0);
  CHECK(std::abs(speed(s) - 1.0) <= 1e-15);
}

TEST_CASE("step policy validation") {
  CHECK(StepPolicy::fixed().step == 1e-3);
  CHECK(StepPolicy::adaptive().rel_tol == 1e-10);
  // The factories validate eagerly; mutated copies re-validate on use.
  CHECK_THROWS_AS(StepPolicy::fixed(0.0), std::invalid_argument);
  CHECK_THROWS_AS(StepPolicy::fixed(-1e-3), std::invalid_argument);
  CHECK_THROWS_AS(StepPolicy::adaptive(-1e-10), std::invalid_argument);
  CHECK_THROWS_AS(StepPolicy::adaptive(1e-10, 0.0), std::invalid_argument);
  StepPolicy bad = StepPolicy::adaptive();
  bad.max_step = 0.0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = StepPolicy::fixed(1e-2);
  bad.step = -1.0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  CHECK_NOTHROW(StepPolicy::fixed(1e-2).validate());
}

TEST_CASE("straight horizontal flow is integrated exactly") {
  const HeisTrace tr = integrate(heis_rhs, {0, 0, 0, 1, 0, 0}, 2.0,
                                 StepPolicy::fixed(1e-3));
  CHECK(state_dist(tr.rows.back().state, {2, 0, 0, 1, 0, 0}) <= 1e-12);
  CHECK(tr.rows.front().s == 0.0);
  CHECK(tr.integrator == "rk4");
  CHECK_FALSE(tr.breached);
  for (std::size_t i = 1; i < tr.rows.size(); ++i) {
    CHECK(tr.rows[i].s > tr.rows[i - 1].s);
  }
}

TEST_CASE("helix against the closed form; fourth-order convergence") {
  CHECK(helix_final_error(1e-3) <= 1e-8);
  const double e_coarse = helix_final_error(2e-2);
  const double e_fine = helix_final_error(1e-2);
  CHECK(e_coarse / e_fine >= 12.0);

  const double c_coarse = cone_final_error(2e-2);
  const double c_fine = cone_final_error(1e-2);
  CHECK(c_coarse / c_fine >= 12.0);
}

TEST_CASE("adaptive integration hits the default tolerances") {
  const HeisGeodesic geo =
      heis_geodesic_from_ic({0, 0, 0}, {kSqrt3 / 2, 0, 0.5});
  const HeisTrace tr = integrate(heis_rhs, helix_ic(), kPi, StepPolicy::adaptive());
  CHECK(tr.integrator == "rk45");
  const HeisPoint want = heis_geodesic_eval(geo, kPi);
  const HeisState& b = tr.rows.back().state;
  CHECK(std::abs(b.x - want.x) <= 1e-9);
  CHECK(std::abs(b.y - want.y) <= 1e-9);
  CHECK(std::abs(b.t - want.t) <= 1e-9);
  CHECK(tr.rows.size() < 400);  // large steps where the tolerance allows
}

TEST_CASE("radial collapse stops at the radius floor with a breach mark") {
  const ConeState ic = make_state(ConePoint{0, 0, 0, 1}, FrameVecC{0, 0, 0, -1});
  const double want = 1.0 - kIntegrateRadiusMin;
  for (const StepPolicy& pol : {StepPolicy::fixed(1e-3), StepPolicy::adaptive()}) {
    const ConeTrace tr = integrate(cone_rhs, ic, 2.0, pol);
    CHECK(tr.breached);
    CHECK(std::abs(tr.breach_s - want) <= 1e-8);
    CHECK(tr.s_back() <= want + 1e-12);
    CHECK(tr.rows.back().state.r >= kIntegrateRadiusMin * (1.0 - 1e-9));
  }
}

TEST_CASE("reverse integration and round-trip consistency") {
  const HeisTrace fw = integrate(heis_rhs, helix_ic(), -1.3, StepPolicy::fixed(1e-3));
  CHECK(fw.s_back() == doctest::Approx(-1.3));
  for (std::size_t i = 1; i < fw.rows.size(); ++i) {
    CHECK(fw.rows[i].s < fw.rows[i - 1].s);
  }
  const HeisGeodesic geo =
      heis_geodesic_from_ic({0, 0, 0}, {kSqrt3 / 2, 0, 0.5});
  const HeisPoint want = heis_geodesic_eval(geo, -1.3);
  CHECK(std::abs(fw.rows.back().state.y - want.y) <= 1e-6);

  const HeisTrace out = integrate(heis_rhs, helix_ic(), 2.0, StepPolicy::fixed(1e-3));
  const HeisTrace back =
      integrate(heis_rhs, out.rows.back().state, -2.0, StepPolicy::fixed(1e-3));
  CHECK(state_dist(back.rows.back().state, helix_ic()) <= 1e-7);
}

TEST_CASE("speed and first integrals are conserved along long traces") {
  const HeisTrace th = integrate(heis_rhs, helix_ic(), 10.0, StepPolicy::fixed(1e-3));
  double drift = 0.0;
  for (const auto& row : th.rows) {
    drift = std::max(drift, std::abs(speed(row.state) - 1.0));
  }
  CHECK(drift <= 1e-9);

  const ConePoint q0{0.3, -0.2, 0.7, 1.5};
  const FrameVecC v0 = normalized(FrameVecC{0.5, -0.4, 0.45, 0.3});
  const ConeGeodesic geo = cone_geodesic_from_ic(q0, v0);
  const ConeTrace tc =
      integrate(cone_rhs, make_state(q0, v0), 10.0, StepPolicy::fixed(1e-3));
  double cd = 0.0, ih = 0.0, ik = 0.0;
  for (const auto& row : tc.rows) {
    cd = std::max(cd, std::abs(speed(row.state) - 1.0));
    ih = std::max(ih, std::abs(row.state.h * row.state.r - geo.c3));
    ik = std::max(ik, std::abs(row.state.k * row.state.r - row.s - geo.c1));
  }
  CHECK(cd <= 1e-9);
  CHECK(ih <= 1e-8);
  CHECK(ik <= 1e-8);
}

TEST_CASE("resample: node identity, cubic exactness, dense accuracy") {
  const HeisTrace tr = integrate(heis_rhs, helix_ic(), kPi, StepPolicy::fixed(1e-3));
  const std::size_t mid = tr.rows.size() / 2;
  const HeisTrace at_node = resample(tr, {tr.rows[mid].s});
  CHECK(state_dist(at_node.rows.front().state, tr.rows[mid].state) == 0.0);

  const HeisTrace line =
      integrate(heis_rhs, {0, 0, 0, 1, 0, 0}, 1.0, StepPolicy::fixed(0.25));
  const HeisTrace mid_line = resample(line, {0.125, 0.625});
  CHECK(std::abs(mid_line.rows[0].state.x - 0.125) <= 1e-12);
  CHECK(std::abs(mid_line.rows[1].state.x - 0.625) <= 1e-12);

  const HeisGeodesic geo =
      heis_geodesic_from_ic({0, 0, 0}, {kSqrt3 / 2, 0, 0.5});
  const HeisTrace dense = resample(tr, {kPi / 2});
  const HeisPoint want = heis_geodesic_eval(geo, kPi / 2);
  CHECK(std::abs(dense.rows[0].state.x - want.x) <= 1e-7);
  CHECK(std::abs(dense.rows[0].state.y - want.y) <= 1e-7);
  CHECK(std::abs(dense.rows[0].state.t - want.t) <= 1e-7);

  CHECK_THROWS_AS(resample(tr, {kPi + 0.1}), std::invalid_argument);
  CHECK_THROWS_AS(resample(tr, {-0.1}), std::invalid_argument);
}

}  // TEST_SUITE("integrate")
