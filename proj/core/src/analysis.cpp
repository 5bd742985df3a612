#include "heiscone/analysis.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "heiscone/rng.hpp"

namespace heiscone {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double max2(double a, double b) { return a > b ? a : b; }

double dist3(double a, double b, double c) {
  return std::sqrt(a * a + b * b + c * c);
}

double dist4(double a, double b, double c, double d) {
  return std::sqrt(a * a + b * b + c * c + d * d);
}

HeisPoint rand_hpoint(Rng& rng, double lim) {
  return {rng.uniform(-lim, lim), rng.uniform(-lim, lim),
          rng.uniform(-lim, lim)};
}

ConePoint rand_cpoint(Rng& rng, double lim, double r_lo, double r_hi) {
  return {rng.uniform(-lim, lim), rng.uniform(-lim, lim),
          rng.uniform(-lim, lim), rng.uniform(r_lo, r_hi)};
}

CoordVecH rand_hvec(Rng& rng, double lim) {
  return {rng.uniform(-lim, lim), rng.uniform(-lim, lim),
          rng.uniform(-lim, lim)};
}

CoordVecC rand_cvec(Rng& rng, double lim) {
  return {rng.uniform(-lim, lim), rng.uniform(-lim, lim),
          rng.uniform(-lim, lim), rng.uniform(-lim, lim)};
}

double check_value(const ValidationReport& rep, const std::string& name) {
  for (const auto& c : rep.checks) {
    if (c.name == name) return c.residual;
  }
  return kInf;
}

// Exact calculus for the frame fields' coordinate coefficients, all of the
// form (A + B x + C y) / r^p. Lets the validator derive Lie brackets from
// coordinates independently of the tabulated structure constants.
struct LinCoef {
  double A = 0.0, B = 0.0, C = 0.0;
  int p = 0;
};

double coef_eval(const LinCoef& c, const ConePoint& q) {
  double v = c.A + c.B * q.x + c.C * q.y;
  for (int i = 0; i < c.p; ++i) v /= q.r;
  return v;
}

// Partial along coordinate j (0:x, 1:y, 2:t, 3:r) at q.
double coef_partial(const LinCoef& c, int j, const ConePoint& q) {
  const double p = static_cast<double>(c.p);
  switch (j) {
    case 0:
      return coef_eval({c.B, 0.0, 0.0, c.p}, q);
    case 1:
      return coef_eval({c.C, 0.0, 0.0, c.p}, q);
    case 2:
      return 0.0;
    default:
      return coef_eval({-p * c.A, -p * c.B, -p * c.C, c.p + 1}, q);
  }
}

using CoefField = std::array<LinCoef, 4>;  // d/dx, d/dy, d/dt, d/dr coefficients

CoordVecC coord_bracket(const CoefField& U, const CoefField& V,
                        const ConePoint& q) {
  double u[4], v[4], w[4];
  for (int i = 0; i < 4; ++i) {
    u[i] = coef_eval(U[i], q);
    v[i] = coef_eval(V[i], q);
  }
  for (int i = 0; i < 4; ++i) {
    double acc = 0.0;
    for (int j = 0; j < 4; ++j) {
      acc += u[j] * coef_partial(V[i], j, q) - v[j] * coef_partial(U[i], j, q);
    }
    w[i] = acc;
  }
  return {w[0], w[1], w[2], w[3]};
}

CoefField heis_field(FrameLabelH l) {
  switch (l) {
    case FrameLabelH::X:
      return {{{1, 0, 0, 0}, {0, 0, 0, 0}, {0, 0, 2, 0}, {0, 0, 0, 0}}};
    case FrameLabelH::Y:
      return {{{0, 0, 0, 0}, {1, 0, 0, 0}, {0, -2, 0, 0}, {0, 0, 0, 0}}};
    default:
      return {{{0, 0, 0, 0}, {0, 0, 0, 0}, {2, 0, 0, 0}, {0, 0, 0, 0}}};
  }
}

CoefField cone_field(FrameLabelC l) {
  switch (l) {
    case FrameLabelC::Xr:
      return {{{1, 0, 0, 1}, {0, 0, 0, 0}, {0, 0, 2, 1}, {0, 0, 0, 0}}};
    case FrameLabelC::Yr:
      return {{{0, 0, 0, 0}, {1, 0, 0, 1}, {0, -2, 0, 1}, {0, 0, 0, 0}}};
    case FrameLabelC::Tr:
      return {{{0, 0, 0, 0}, {0, 0, 0, 0}, {2, 0, 0, 1}, {0, 0, 0, 0}}};
    default:
      return {{{0, 0, 0, 0}, {0, 0, 0, 0}, {0, 0, 0, 0}, {1, 0, 0, 0}}};
  }
}

}  // namespace

void ValidationReport::add_check(const std::string& name, double residual,
                                 double tolerance) {
  const bool ok = std::isfinite(residual) && residual <= tolerance;
  checks.push_back({name, residual, tolerance, ok});
}

void ValidationReport::merge(const ValidationReport& other,
                             const std::string& prefix) {
  for (const auto& c : other.checks) {
    checks.push_back({prefix + c.name, c.residual, c.tolerance, c.pass});
  }
  for (const auto& n : other.notes) notes.push_back(n);
}

bool ValidationReport::passed() const {
  for (const auto& c : checks) {
    if (!c.pass) return false;
  }
  return true;
}

ValidationReport compare_closed_numeric(const HeisPoint& p0,
                                        const FrameVecH& v0, double s_span,
                                        const StepPolicy& policy) {
  if (!(s_span >= 0.0)) {
    throw std::invalid_argument("comparison span must be non-negative");
  }
  ValidationReport rep;
  rep.suite = "compare.heis";
  const HeisGeodesic geo = heis_geodesic_from_ic(p0, v0);
  const HeisState st0 = make_state(p0, v0);
  const double speed0 = speed(st0);
  double pos = 0.0, vel = 0.0, drift = 0.0;
  for (const double dir : {1.0, -1.0}) {
    if (dir < 0.0 && s_span == 0.0) continue;
    const HeisTrace tr = integrate(heis_rhs, st0, dir * s_span, policy);
    for (const auto& row : tr.rows) {
      const HeisPoint cp = heis_geodesic_eval(geo, row.s);
      const FrameVecH cv = heis_geodesic_velocity(geo, row.s);
      pos = max2(pos, dist3(cp.x - row.state.x, cp.y - row.state.y,
                            cp.t - row.state.t));
      vel = max2(vel, dist3(cv.f - row.state.f, cv.g - row.state.g,
                            cv.h - row.state.h));
      drift = max2(drift, std::abs(speed(row.state) - speed0));
    }
  }
  rep.add_check("position_sup", pos, 1e-6);
  rep.add_check("velocity_sup", vel, 1e-6);
  rep.add_check("speed_drift", drift, 1e-9);
  return rep;
}

ValidationReport compare_closed_numeric(const ConePoint& q0,
                                        const FrameVecC& v0, double s_span,
                                        const StepPolicy& policy) {
  if (!(s_span >= 0.0)) {
    throw std::invalid_argument("comparison span must be non-negative");
  }
  ValidationReport rep;
  rep.suite = "compare.cone";
  const ConeGeodesic geo = cone_geodesic_from_ic(q0, v0);
  const ConeState st0 = make_state(q0, v0);
  const double speed0 = speed(st0);
  double pos = 0.0, vel = 0.0, drift = 0.0, c3_res = 0.0, c1_res = 0.0;
  for (const double dir : {1.0, -1.0}) {
    if (dir < 0.0 && s_span == 0.0) continue;
    const ConeTrace tr = integrate(cone_rhs, st0, dir * s_span, policy);
    for (const auto& row : tr.rows) {
      const ConePoint cp = cone_geodesic_eval(geo, row.s);
      const FrameVecC cv = cone_geodesic_velocity(geo, row.s);
      pos = max2(pos, dist4(cp.x - row.state.x, cp.y - row.state.y,
                            cp.t - row.state.t, cp.r - row.state.r));
      vel = max2(vel, dist4(cv.f - row.state.f, cv.g - row.state.g,
                            cv.h - row.state.h, cv.k - row.state.k));
      drift = max2(drift, std::abs(speed(row.state) - speed0));
      c3_res = max2(c3_res, std::abs(row.state.h * row.state.r - geo.c3));
      c1_res =
          max2(c1_res, std::abs(row.state.k * row.state.r - row.s - geo.c1));
    }
    if (tr.breached) {
      std::ostringstream note;
      note << "domain breach at s = " << tr.breach_s
           << "; compared up to the breach";
      rep.notes.push_back(note.str());
    }
  }
  rep.add_check("position_sup", pos, 1e-6);
  rep.add_check("velocity_sup", vel, 1e-6);
  rep.add_check("speed_drift", drift, 1e-9);
  rep.add_check("first_integral_h_r", c3_res, 1e-8);
  rep.add_check("first_integral_k_r", c1_res, 1e-8);
  return rep;
}

ValidationReport structure_validate(int n_points, std::uint64_t seed,
                                    const MetricParamL& L) {
  if (n_points < 1) {
    throw std::invalid_argument("structure validation needs n_points >= 1");
  }
  ValidationReport rep;
  rep.suite = "structures";
  rep.seed = seed;
  rep.n_samples = n_points;

  Rng rng(Rng::derive(seed, 11));
  using LH = FrameLabelH;
  using LC = FrameLabelC;
  constexpr LH kLabelsH[3] = {LH::X, LH::Y, LH::Ttilde};
  constexpr LC kLabelsC[4] = {LC::Xr, LC::Yr, LC::Tr, LC::Rr};

  double group_ax = 0.0, ortho_h = 0.0, kernel = 0.0, bracket_h = 0.0;
  double torsion_h = 0.0, compat_h = 0.0, phi_sq = 0.0, contact = 0.0;
  double round_h = 0.0;
  double ortho_c = 0.0, j_sq = 0.0, j_iso = 0.0, ff_compat = 0.0;
  double bracket_c = 0.0, torsion_c = 0.0, compat_c = 0.0, round_c = 0.0;

  for (int i = 0; i < n_points; ++i) {
    // Group axioms on coordinates of magnitude up to 10.
    {
      const HeisPoint p = rand_hpoint(rng, 10.0);
      const HeisPoint q = rand_hpoint(rng, 10.0);
      const HeisPoint w = rand_hpoint(rng, 10.0);
      const HeisPoint lhs = group_mul(group_mul(p, q), w);
      const HeisPoint rhs = group_mul(p, group_mul(q, w));
      group_ax = max2(group_ax, dist3(lhs.x - rhs.x, lhs.y - rhs.y,
                                      lhs.t - rhs.t));
      const HeisPoint e = group_mul(p, group_inv(p));
      group_ax = max2(group_ax, dist3(e.x, e.y, e.t));
      const HeisPoint idp = group_mul(HeisPoint{0.0, 0.0, 0.0}, p);
      group_ax = max2(group_ax, dist3(idp.x - p.x, idp.y - p.y, idp.t - p.t));
    }

    const HeisPoint p = rand_hpoint(rng, 3.0);

    // Frame orthonormality for g_L (fails off the Sasakian value).
    for (int a = 0; a < 3; ++a) {
      const CoordVecH ea = frame_at(p, kLabelsH[a]);
      for (int b = 0; b < 3; ++b) {
        const CoordVecH eb = frame_at(p, kLabelsH[b]);
        const double want = (a == b) ? 1.0 : 0.0;
        ortho_h = max2(ortho_h, std::abs(metric_g(p, ea, eb, L) - want));
      }
    }

    // omega annihilates the horizontal frame; omega_half(Ttilde) = 1.
    kernel = max2(kernel, std::abs(contact_form(p, frame_at(p, LH::X))));
    kernel = max2(kernel, std::abs(contact_form(p, frame_at(p, LH::Y))));
    kernel = max2(kernel,
                  std::abs(contact_form_half(p, frame_at(p, LH::Ttilde)) - 1.0));

    // Bracket table against the coordinate calculus of the frame fields;
    // the single nonzero bracket is [X, Y] = -2 Ttilde = (0, 0, -4).
    {
      const ConePoint pe{p.x, p.y, p.t, 1.0};
      for (int a = 0; a < 3; ++a) {
        for (int b = 0; b < 3; ++b) {
          const CoordVecC w = coord_bracket(heis_field(kLabelsH[a]),
                                            heis_field(kLabelsH[b]), pe);
          const CoordVecH tb =
              frame_compose(p, lie_bracket(kLabelsH[a], kLabelsH[b]));
          bracket_h = max2(bracket_h,
                           dist3(w.dx - tb.dx, w.dy - tb.dy, w.dt - tb.dt));
        }
      }
      const CoordVecC xy =
          coord_bracket(heis_field(LH::X), heis_field(LH::Y), pe);
      bracket_h = max2(bracket_h, dist3(xy.dx, xy.dy, xy.dt + 4.0));
    }

    // Torsion-free: D_a b - D_b a = [a, b] on all frame pairs.
    for (int a = 0; a < 3; ++a) {
      for (int b = 0; b < 3; ++b) {
        const FrameVecH d =
            connection_h(kLabelsH[a], kLabelsH[b]) -
            connection_h(kLabelsH[b], kLabelsH[a]) -
            lie_bracket(kLabelsH[a], kLabelsH[b]);
        torsion_h = max2(torsion_h, dist3(d.f, d.g, d.h));
      }
    }

    // Metric compatibility of the connection table against g_L.
    for (int a = 0; a < 3; ++a) {
      for (int b = 0; b < 3; ++b) {
        const CoordVecH eb = frame_at(p, kLabelsH[b]);
        const CoordVecH db = frame_compose(p, connection_h(kLabelsH[a], kLabelsH[b]));
        for (int c = 0; c < 3; ++c) {
          const CoordVecH ec = frame_at(p, kLabelsH[c]);
          const CoordVecH dc =
              frame_compose(p, connection_h(kLabelsH[a], kLabelsH[c]));
          compat_h = max2(compat_h, std::abs(metric_g(p, db, ec, L) +
                                             metric_g(p, eb, dc, L)));
        }
      }
    }

    // phi^2 = -Id + omega_half (x) Ttilde, on frame components.
    {
      const FrameVecH v{rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0),
                        rng.uniform(-2.0, 2.0)};
      const FrameVecH pp = phi_apply(phi_apply(v));
      phi_sq = max2(phi_sq, dist3(pp.f + v.f, pp.g + v.g, pp.h));
    }

    // Contact-metric relations for (omega_half, Ttilde, phi, g_L):
    //   (a) omega_half(V) = g(V, Ttilde)   <- detects L != 1/4
    //   (b) (1/2) d omega_half (U, V) = g(phi U, V)
    //   (c) phi^2 V = -V + omega_half(V) Ttilde  (coordinate form)
    {
      const CoordVecH U = rand_hvec(rng, 2.0);
      const CoordVecH V = rand_hvec(rng, 2.0);
      const CoordVecH tt = frame_at(p, LH::Ttilde);
      const double rel_a =
          std::abs(contact_form_half(p, V) - metric_g(p, V, tt, L));
      const CoordVecH phiU =
          frame_compose(p, phi_apply(frame_decompose(p, U)));
      const double rel_b =
          std::abs((U.dx * V.dy - U.dy * V.dx) - metric_g(p, phiU, V, L));
      const FrameVecH w = frame_decompose(p, V);
      const CoordVecH phi2V = frame_compose(p, phi_apply(phi_apply(w)));
      const double rel_c =
          dist3(phi2V.dx + V.dx, phi2V.dy + V.dy,
                phi2V.dt + V.dt - contact_form_half(p, V) * tt.dt);
      contact = max2(contact, max2(rel_a, max2(rel_b, rel_c)));
    }

    // Frame decompose/compose round trip (moderate magnitudes keep the
    // 1e-14 absolute bound meaningful).
    {
      const HeisPoint pm = rand_hpoint(rng, 1.5);
      const FrameVecH w{rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0),
                        rng.uniform(-2.0, 2.0)};
      const FrameVecH w2 = frame_decompose(pm, frame_compose(pm, w));
      round_h = max2(round_h, dist3(w2.f - w.f, w2.g - w.g, w2.h - w.h));
      const CoordVecH u = rand_hvec(rng, 2.0);
      const CoordVecH u2 = frame_compose(pm, frame_decompose(pm, u));
      round_h = max2(round_h, dist3(u2.dx - u.dx, u2.dy - u.dy, u2.dt - u.dt));
    }

    // Cone frame orthonormality over the full sampled radius range.
    {
      const ConePoint q = rand_cpoint(rng, 3.0, 0.1, 10.0);
      for (int a = 0; a < 4; ++a) {
        const CoordVecC ea = cone_frame_at(q, kLabelsC[a]);
        for (int b = 0; b < 4; ++b) {
          const CoordVecC eb = cone_frame_at(q, kLabelsC[b]);
          const double want = (a == b) ? 1.0 : 0.0;
          ortho_c = max2(ortho_c, std::abs(cone_metric(q, ea, eb) - want));
        }
      }

      // Bracket table against the coordinate calculus at the sampled point,
      // plus the pinned value [X_r, Y_r] = -(2/r) T_r; connection torsion.
      const double r = q.r;
      for (int a = 0; a < 4; ++a) {
        for (int b = 0; b < 4; ++b) {
          const CoordVecC w = coord_bracket(cone_field(kLabelsC[a]),
                                            cone_field(kLabelsC[b]), q);
          const CoordVecC tb = frame_compose_cone(
              q, lie_bracket_cone(kLabelsC[a], kLabelsC[b], r));
          bracket_c = max2(bracket_c, dist4(w.dx - tb.dx, w.dy - tb.dy,
                                            w.dt - tb.dt, w.dr - tb.dr));

          const FrameVecC tf = connection_c(kLabelsC[a], kLabelsC[b], r) -
                               connection_c(kLabelsC[b], kLabelsC[a], r) -
                               lie_bracket_cone(kLabelsC[a], kLabelsC[b], r);
          torsion_c = max2(torsion_c, norm(tf));
        }
      }
      bracket_c = max2(
          bracket_c, norm(lie_bracket_cone(LC::Xr, LC::Yr, r) -
                          FrameVecC{0.0, 0.0, -2.0 / r, 0.0}));
      // Metric compatibility in frame components (orthonormal, so the
      // frame inner product is the Euclidean dot).
      for (int a = 0; a < 4; ++a) {
        for (int b = 0; b < 4; ++b) {
          const FrameVecC db = connection_c(kLabelsC[a], kLabelsC[b], r);
          for (int c = 0; c < 4; ++c) {
            const FrameVecC dc = connection_c(kLabelsC[a], kLabelsC[c], r);
            double eb_dot_dc = (b == 0   ? dc.f
                                : b == 1 ? dc.g
                                : b == 2 ? dc.h
                                         : dc.k);
            double ec_dot_db = (c == 0   ? db.f
                                : c == 1 ? db.g
                                : c == 2 ? db.h
                                         : db.k);
            compat_c = max2(compat_c, std::abs(eb_dot_dc + ec_dot_db));
          }
        }
      }
    }

    // J identities and the fundamental form at moderate magnitudes.
    {
      const ConePoint q = rand_cpoint(rng, 1.0, 0.5, 2.0);
      const FrameVecC v{rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0),
                        rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0)};
      const FrameVecC jj = j_apply(j_apply(v));
      j_sq = max2(j_sq, norm(jj + v));

      const CoordVecC u = rand_cvec(rng, 1.0);
      const CoordVecC w = rand_cvec(rng, 1.0);
      const CoordVecC ju = frame_compose_cone(q, j_apply(frame_decompose_cone(q, u)));
      const CoordVecC jw = frame_compose_cone(q, j_apply(frame_decompose_cone(q, w)));
      j_iso = max2(j_iso,
                   std::abs(cone_metric(q, ju, jw) - cone_metric(q, u, w)));
      ff_compat = max2(ff_compat, std::abs(fundamental_form(q, u, w) -
                                           cone_metric(q, ju, w)));
      ff_compat = max2(ff_compat, std::abs(fundamental_form(q, u, u)));
    }

    // Cone frame round trip at gentle magnitudes (1e-14 bound).
    {
      const ConePoint q = rand_cpoint(rng, 1.0, 0.7, 1.5);
      const FrameVecC w{rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0),
                        rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
      const FrameVecC w2 = frame_decompose_cone(q, frame_compose_cone(q, w));
      round_c = max2(round_c, norm(w2 - w));
      const CoordVecC u = rand_cvec(rng, 1.0);
      const CoordVecC u2 = frame_compose_cone(q, frame_decompose_cone(q, u));
      round_c = max2(round_c, dist4(u2.dx - u.dx, u2.dy - u.dy, u2.dt - u.dt,
                                    u2.dr - u.dr));
    }
  }

  rep.add_check("heis.group_axioms", group_ax, 1e-12);
  rep.add_check("heis.frame_orthonormality", ortho_h, 1e-12);
  rep.add_check("heis.contact_kernel", kernel, 1e-12);
  rep.add_check("heis.bracket_table", bracket_h, 1e-12);
  rep.add_check("heis.torsion_free", torsion_h, 1e-12);
  rep.add_check("heis.metric_compatibility", compat_h, 1e-12);
  rep.add_check("heis.phi_squared", phi_sq, 1e-12);
  rep.add_check("heis.contact_metric_relations", contact, 1e-12);
  rep.add_check("heis.frame_roundtrip", round_h, 1e-14);
  rep.add_check("cone.frame_orthonormality", ortho_c, 1e-12);
  rep.add_check("cone.j_squared", j_sq, 1e-12);
  rep.add_check("cone.j_isometry", j_iso, 1e-12);
  rep.add_check("cone.fundamental_form_compat", ff_compat, 1e-12);
  rep.add_check("cone.bracket_table", bracket_c, 1e-12);
  rep.add_check("cone.torsion_free", torsion_c, 1e-12);
  rep.add_check("cone.metric_compatibility", compat_c, 1e-12);
  rep.add_check("cone.frame_roundtrip", round_c, 1e-14);
  {
    std::ostringstream note;
    note << "metric parameter L = " << L.value()
         << (L.value() == 0.25 ? " (Sasakian)" : " (perturbed)");
    rep.notes.push_back(note.str());
  }
  return rep;
}

ConePoint embed_halfplane(const HalfPlanePoint& p) {
  return {0.0, 0.0, 2.0 * p.t, p.r};
}

HalfPlaneGeodesic::HalfPlaneGeodesic(const HalfPlanePoint& p0, double theta) {
  if (!(p0.r > 0.0)) {
    throw std::invalid_argument("half-plane point requires r > 0");
  }
  t0_ = p0.t;
  r0_ = p0.r;
  cross_ = r0_ * std::cos(theta);
  pd_ = r0_ * std::sin(theta);
  if (std::abs(cross_) <= 1e-12 * r0_) {
    // Spoke line through the chart origin: snap to the exact radial ray.
    cross_ = 0.0;
    pd_ = std::copysign(r0_, pd_);
    dom_ = (pd_ > 0.0) ? GeodesicDomain{-r0_, kInf}
                       : GeodesicDomain{-kInf, r0_};
  } else {
    dom_ = {-kInf, kInf};
  }
}

HalfPlanePoint HalfPlaneGeodesic::eval(double s) const {
  if (!dom_.contains(s)) {
    throw std::domain_error("parameter outside the half-plane geodesic domain");
  }
  if (cross_ == 0.0) {
    return {t0_, r0_ + ((pd_ > 0.0) ? s : -s)};
  }
  const double r = std::sqrt(s * s + 2.0 * s * pd_ + r0_ * r0_);
  // The chart path never crosses the atan2 branch cut (its first component
  // is r0^2 > 0 wherever the second vanishes), so this branch is smooth.
  const double t = t0_ + std::atan2(s * cross_, r0_ * r0_ + s * pd_);
  return {t, r};
}

void HalfPlaneGeodesic::velocity(double s, double* dt_ds, double* dr_ds) const {
  if (!dom_.contains(s)) {
    throw std::domain_error("parameter outside the half-plane geodesic domain");
  }
  if (cross_ == 0.0) {
    *dt_ds = 0.0;
    *dr_ds = (pd_ > 0.0) ? 1.0 : -1.0;
    return;
  }
  const double r2 = s * s + 2.0 * s * pd_ + r0_ * r0_;
  *dt_ds = cross_ / r2;
  *dr_ds = (s + pd_) / std::sqrt(r2);
}

ValidationReport totally_geodesic_check(const HalfPlanePoint& p0, double theta,
                                        double s_span) {
  if (!(s_span > 0.0)) {
    throw std::invalid_argument("span must be positive");
  }
  ValidationReport rep;
  rep.suite = "totally_geodesic";
  const HalfPlaneGeodesic hp(p0, theta);
  const double delta = 1e-5;

  const auto image_state = [&](double s) {
    const HalfPlanePoint u = hp.eval(s);
    double dt = 0.0, dr = 0.0;
    hp.velocity(s, &dt, &dr);
    // iota(t, r) = (0, 0, 2t, r); frame components of the image velocity
    // are (0, 0, r dt/ds, dr/ds).
    ConeState st;
    st.x = 0.0;
    st.y = 0.0;
    st.t = 2.0 * u.t;
    st.r = u.r;
    st.f = 0.0;
    st.g = 0.0;
    st.h = u.r * dt;
    st.k = dr;
    return st;
  };

  const GeodesicDomain dom = hp.domain();
  const double s_lo = std::max(-s_span, dom.s_min + 1e-3);
  const double s_hi = std::min(s_span, dom.s_max - 1e-3);
  const int n_samples = 61;
  double ode_res = 0.0;
  int used = 0;
  for (int i = 0; i < n_samples; ++i) {
    const double s =
        s_lo + (s_hi - s_lo) * static_cast<double>(i) / (n_samples - 1);
    if (hp.eval(s).r < 0.05) continue;  // keep the 1/r terms well conditioned
    const ConeState a = image_state(s);
    const ConeState fwd = image_state(s + delta);
    const ConeState bwd = image_state(s - delta);
    const ConeState want = cone_rhs(a);
    const double inv2d = 1.0 / (2.0 * delta);
    const double res = std::max(
        {std::abs((fwd.x - bwd.x) * inv2d - want.x),
         std::abs((fwd.y - bwd.y) * inv2d - want.y),
         std::abs((fwd.t - bwd.t) * inv2d - want.t),
         std::abs((fwd.r - bwd.r) * inv2d - want.r),
         std::abs((fwd.f - bwd.f) * inv2d - want.f),
         std::abs((fwd.g - bwd.g) * inv2d - want.g),
         std::abs((fwd.h - bwd.h) * inv2d - want.h),
         std::abs((fwd.k - bwd.k) * inv2d - want.k)});
    ode_res = max2(ode_res, res);
    ++used;
  }
  rep.n_samples = used;
  rep.add_check("ode_residual", used > 0 ? ode_res : kInf, 1e-6);

  // Pullback identity g_U = iota* g_r on random tangent pairs; exact up to
  // rounding, independent of the particular geodesic.
  Rng rng(0x636f6e65ULL);
  double pull = 0.0;
  for (int i = 0; i < 100; ++i) {
    const HalfPlanePoint base{rng.uniform(-3.0, 3.0), rng.uniform(0.3, 3.0)};
    const double ut = rng.uniform(-1.0, 1.0), ur = rng.uniform(-1.0, 1.0);
    const double vt = rng.uniform(-1.0, 1.0), vr = rng.uniform(-1.0, 1.0);
    const double gu = ur * vr + base.r * base.r * ut * vt;
    const CoordVecC iu{0.0, 0.0, 2.0 * ut, ur};
    const CoordVecC iv{0.0, 0.0, 2.0 * vt, vr};
    pull = max2(pull, std::abs(cone_metric(embed_halfplane(base), iu, iv) - gu));
  }
  rep.add_check("pullback_identity", pull, 1e-12);
  return rep;
}

ValidationReport incompleteness_witness(const ConeGeodesic& geo) {
  ValidationReport rep;
  rep.suite = "completeness.witness";
  const GeodesicDomain dom = geodesic_domain(geo);
  std::ostringstream note;
  if (std::isinf(dom.s_max)) {
    rep.add_check("forward_domain_unbounded", 0.0, 1e-12);
    note << "geodesic (case " << to_string(geo.kind) << ", r0 = " << geo.base.r
         << "): r(s)^2 = (s + c1)^2 + " << geo.a * geo.a
         << " is bounded below by " << geo.a
         << " > 0, the domain is all of R; not a witness of incompleteness";
  } else {
    rep.add_check("forward_domain_bounded", 0.0, 1e-12);
    rep.add_check("finite_forward_length",
                  std::abs((dom.s_max - 0.0) - geo.base.r), 1e-12);
    note << "geodesic (case " << to_string(geo.kind) << ", r0 = " << geo.base.r
         << "): maximal forward domain ends at s = " << dom.s_max
         << ", so the unit-speed length to the missing tip is " << dom.s_max
         << "; a finite-length inextensible geodesic witnesses"
            " incompleteness";
  }
  rep.notes.push_back(note.str());
  return rep;
}

ValidationReport incompleteness_witness(double r0) {
  if (!(r0 > 0.0)) {
    throw std::invalid_argument("witness radius must be positive");
  }
  const ConePoint base{0.0, 0.0, 0.0, r0};
  const FrameVecC inward{0.0, 0.0, 0.0, -1.0};
  const ConeGeodesic geo = cone_geodesic_from_ic(base, inward);
  ValidationReport rep = incompleteness_witness(geo);
  const GeodesicDomain dom = geodesic_domain(geo);
  rep.add_check("maximal_domain_bound", std::abs(dom.s_max - r0), 1e-12);

  // Unit speed along the witness: length to the boundary = s_max = r0.
  double sp = 0.0;
  for (int i = 0; i < 64; ++i) {
    const double s = (r0 - 1e-6) * static_cast<double>(i) / 63.0;
    sp = max2(sp, std::abs(norm(cone_geodesic_velocity(geo, s)) - 1.0));
  }
  rep.add_check("unit_speed_to_boundary", sp, 1e-12);

  const ConeTrace tr =
      integrate(cone_rhs, make_state(base, inward), r0, StepPolicy::adaptive());
  const double want_breach = r0 - kIntegrateRadiusMin;
  const double breach_res =
      tr.breached ? std::abs(tr.breach_s - want_breach) : kInf;
  rep.add_check("breach_location", breach_res, 1e-8);

  std::ostringstream n1, n2;
  n1 << "witness r0 = " << r0 << ": the inward radial geodesic (0, 0, 0, "
     << r0 << " - s) is inextensible past s = " << r0
     << " yet has finite length " << r0
     << "; the cone metric is geodesically incomplete";
  rep.notes.push_back(n1.str());
  n2 << "adaptive integration stops at the radius floor: breach at s = "
     << (tr.breached ? tr.breach_s : std::nan("")) << " (expected " << want_breach
     << ")";
  rep.notes.push_back(n2.str());
  rep.notes.push_back(
      "the same ray lies in the totally geodesic half-plane image, whose "
      "radial lines end at the absent tip r = 0; finite-length inextensible "
      "geodesics in a submanifold whose geodesics are ambient geodesics "
      "force incompleteness of the ambient cone (the computation above is "
      "the witness; this sentence records the inference)");
  return rep;
}

namespace {

using Vec4 = std::array<double, 4>;

Vec4 to_vec(const FrameVecC& v) { return {v.f, v.g, v.h, v.k}; }
FrameVecC from_vec(const Vec4& a) { return {a[0], a[1], a[2], a[3]}; }

double vnorm(const Vec4& a) {
  return std::sqrt(a[0] * a[0] + a[1] * a[1] + a[2] * a[2] + a[3] * a[3]);
}

/// Solves A x = b by Gaussian elimination with partial pivoting.
bool solve4(std::array<Vec4, 4> A, Vec4 b, Vec4* x) {
  for (int col = 0; col < 4; ++col) {
    int piv = col;
    for (int row = col + 1; row < 4; ++row) {
      if (std::abs(A[row][col]) > std::abs(A[piv][col])) piv = row;
    }
    if (std::abs(A[piv][col]) < 1e-14) return false;
    std::swap(A[piv], A[col]);
    std::swap(b[piv], b[col]);
    for (int row = col + 1; row < 4; ++row) {
      const double m = A[row][col] / A[col][col];
      for (int k = col; k < 4; ++k) A[row][k] -= m * A[col][k];
      b[row] -= m * b[col];
    }
  }
  for (int row = 3; row >= 0; --row) {
    double acc = b[row];
    for (int k = row + 1; k < 4; ++k) acc -= A[row][k] * (*x)[k];
    (*x)[row] = acc / A[row][row];
  }
  return true;
}

/// Orthonormal basis of the tangent space of S^3 at unit v: canonical axes
/// minus the one most parallel to v, Gram-Schmidt against v and each other.
std::array<Vec4, 3> sphere_tangent_basis(const Vec4& v) {
  int drop = 0;
  for (int i = 1; i < 4; ++i) {
    if (std::abs(v[i]) > std::abs(v[drop])) drop = i;
  }
  std::array<Vec4, 3> basis;
  int out = 0;
  for (int axis = 0; axis < 4; ++axis) {
    if (axis == drop) continue;
    Vec4 e{0.0, 0.0, 0.0, 0.0};
    e[axis] = 1.0;
    double dv = 0.0;
    for (int i = 0; i < 4; ++i) dv += e[i] * v[i];
    for (int i = 0; i < 4; ++i) e[i] -= dv * v[i];
    for (int j = 0; j < out; ++j) {
      double d = 0.0;
      for (int i = 0; i < 4; ++i) d += e[i] * basis[j][i];
      for (int i = 0; i < 4; ++i) e[i] -= d * basis[j][i];
    }
    const double n = vnorm(e);
    for (int i = 0; i < 4; ++i) e[i] /= n;
    basis[out++] = e;
  }
  return basis;
}

Vec4 normalize4(Vec4 v) {
  const double n = vnorm(v);
  if (!(n > 0.0)) throw std::invalid_argument("zero direction");
  for (auto& c : v) c /= n;
  return v;
}

}  // namespace

ShootingResult connect_shooting(const ConePoint& p, const ConePoint& q,
                                int max_iter, double tol) {
  if (!(p.r > kConeRadiusMin) || !(q.r > kConeRadiusMin)) {
    throw std::domain_error("shooting endpoints must have positive radius");
  }
  if (max_iter < 1 || !(tol > 0.0)) {
    throw std::invalid_argument("shooting needs max_iter >= 1 and tol > 0");
  }

  // Endpoint defect e(v, s); false when evaluation leaves the domain.
  const auto defect = [&](const Vec4& v, double s, Vec4* e) -> bool {
    try {
      const ConeGeodesic g = cone_geodesic_from_ic(p, from_vec(v));
      const ConePoint c = cone_geodesic_eval(g, s);
      (*e) = {c.x - q.x, c.y - q.y, c.t - q.t, c.r - q.r};
      return true;
    } catch (const std::domain_error&) {
      return false;
    }
  };

  // Chord initial guess plus a deterministic fan of fallback directions.
  const CoordVecC chord{q.x - p.x, q.y - p.y, q.t - p.t, q.r - p.r};
  const double chord_len =
      std::sqrt(std::max(0.0, cone_metric(p, chord, chord)));
  ShootingResult best;
  best.residual = kInf;
  if (chord_len < 1e-14) {
    best.converged = true;
    best.direction = {0.0, 0.0, 0.0, 1.0};
    best.geodesic = cone_geodesic_from_ic(p, best.direction);
    best.s_star = 0.0;
    best.residual = 0.0;
    return best;
  }

  std::vector<Vec4> starts;
  starts.push_back(normalize4(to_vec(frame_decompose_cone(p, chord))));
  for (int axis = 0; axis < 4; ++axis) {
    for (const double sign : {1.0, -1.0}) {
      Vec4 e{0.1, 0.1, 0.1, 0.1};  // off-axis so no start is exactly radial
      e[axis] += sign;
      starts.push_back(normalize4(e));
    }
  }

  int iters = 0;
  for (const Vec4& start : starts) {
    Vec4 v = start;
    double s = chord_len;
    Vec4 e;
    if (!defect(v, s, &e)) continue;
    double res = vnorm(e);
    while (iters < max_iter) {
      if (res <= tol) break;
      ++iters;
      const auto basis = sphere_tangent_basis(v);
      const double dv = 1e-7;
      const double ds = 1e-7 * std::max(1.0, std::abs(s));
      std::array<Vec4, 4> jac_cols;
      bool jac_ok = true;
      for (int j = 0; j < 3 && jac_ok; ++j) {
        Vec4 vp = v;
        for (int i = 0; i < 4; ++i) vp[i] += dv * basis[j][i];
        vp = normalize4(vp);
        Vec4 ep;
        jac_ok = defect(vp, s, &ep);
        if (jac_ok) {
          for (int i = 0; i < 4; ++i) jac_cols[j][i] = (ep[i] - e[i]) / dv;
        }
      }
      if (jac_ok) {
        Vec4 ep;
        jac_ok = defect(v, s + ds, &ep);
        if (jac_ok) {
          for (int i = 0; i < 4; ++i) jac_cols[3][i] = (ep[i] - e[i]) / ds;
        }
      }
      if (!jac_ok) break;
      std::array<Vec4, 4> A;
      for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) A[i][j] = jac_cols[j][i];
      }
      Vec4 rhs{-e[0], -e[1], -e[2], -e[3]};
      Vec4 delta;
      if (!solve4(A, rhs, &delta)) break;
      bool accepted = false;
      for (double lam = 1.0; lam > 1e-4; lam *= 0.5) {
        Vec4 vn = v;
        for (int j = 0; j < 3; ++j) {
          for (int i = 0; i < 4; ++i) vn[i] += lam * delta[j] * basis[j][i];
        }
        vn = normalize4(vn);
        const double sn = std::max(s + lam * delta[3], 1e-12);
        Vec4 en;
        if (!defect(vn, sn, &en)) continue;
        if (vnorm(en) < res) {
          v = vn;
          s = sn;
          e = en;
          res = vnorm(en);
          accepted = true;
          break;
        }
      }
      if (!accepted) break;
    }
    if (res < best.residual) {
      best.residual = res;
      best.direction = from_vec(v);
      best.s_star = s;
      best.converged = res <= tol;
      best.geodesic = cone_geodesic_from_ic(p, best.direction);
    }
    if (best.converged || iters >= max_iter) break;
  }
  best.iterations = iters;
  return best;
}

namespace {

FrameVecH sample_heis_dir(Rng& rng, HeisCase kind) {
  switch (kind) {
    case HeisCase::Line: {
      const double a = rng.uniform(0.0, 6.283185307179586);
      return {std::cos(a), std::sin(a), 0.0};
    }
    case HeisCase::Vertical:
      return {0.0, 0.0, rng.uniform01() < 0.5 ? 1.0 : -1.0};
    case HeisCase::Helix: {
      const double c =
          (rng.uniform01() < 0.5 ? 1.0 : -1.0) * rng.uniform(0.05, 0.95);
      const double a = rng.uniform(0.0, 6.283185307179586);
      const double m = std::sqrt(1.0 - c * c);
      return {m * std::cos(a), m * std::sin(a), c};
    }
  }
  throw std::logic_error("unreachable");
}

FrameVecC sample_cone_dir(Rng& rng, ConeCase kind) {
  switch (kind) {
    case ConeCase::RadialLine:
      return {0.0, 0.0, 0.0, rng.uniform01() < 0.5 ? 1.0 : -1.0};
    case ConeCase::Arc: {
      const double k = rng.uniform(-0.95, 0.95);
      const double h =
          (rng.uniform01() < 0.5 ? 1.0 : -1.0) * std::sqrt(1.0 - k * k);
      return {0.0, 0.0, h, k};
    }
    case ConeCase::HorizontalLimit: {
      const double k = rng.uniform(-0.9, 0.9);
      const double a = rng.uniform(0.0, 6.283185307179586);
      const double m = std::sqrt(1.0 - k * k);
      return {m * std::cos(a), m * std::sin(a), 0.0, k};
    }
    case ConeCase::General: {
      const double k = rng.uniform(-0.9, 0.9);
      const double share = rng.uniform(0.15, 0.85);
      const double rest = 1.0 - k * k;
      const double h =
          (rng.uniform01() < 0.5 ? 1.0 : -1.0) * std::sqrt(rest * share);
      const double m = std::sqrt(rest * (1.0 - share));
      const double a = rng.uniform(0.0, 6.283185307179586);
      return {m * std::cos(a), m * std::sin(a), h, k};
    }
  }
  throw std::logic_error("unreachable");
}

}  // namespace

ValidationReport run_suite_structures(std::uint64_t seed) {
  return structure_validate(1000, seed);
}

ValidationReport run_suite_geodesics(std::uint64_t seed) {
  ValidationReport rep;
  rep.suite = "geodesics";
  rep.seed = seed;
  rep.n_samples = 100;
  const StepPolicy policy = StepPolicy::fixed(1e-3);

  double drift = 0.0, c3_res = 0.0, c1_res = 0.0;

  {
    Rng rng(Rng::derive(seed, 21));
    const HeisCase cases[3] = {HeisCase::Line, HeisCase::Vertical,
                               HeisCase::Helix};
    for (const HeisCase kind : cases) {
      double pos = 0.0, vel = 0.0;
      for (int i = 0; i < 100; ++i) {
        const HeisPoint p0 = rand_hpoint(rng, 2.0);
        const FrameVecH v0 = sample_heis_dir(rng, kind);
        const ValidationReport c = compare_closed_numeric(p0, v0, 3.0, policy);
        pos = max2(pos, check_value(c, "position_sup"));
        vel = max2(vel, check_value(c, "velocity_sup"));
        drift = max2(drift, check_value(c, "speed_drift"));
      }
      const std::string base = std::string("heis.") + to_string(kind);
      rep.add_check(base + ".position_sup", pos, 1e-6);
      rep.add_check(base + ".velocity_sup", vel, 1e-6);
    }
  }

  {
    Rng rng(Rng::derive(seed, 22));
    const ConeCase cases[4] = {ConeCase::RadialLine, ConeCase::Arc,
                               ConeCase::General, ConeCase::HorizontalLimit};
    for (const ConeCase kind : cases) {
      double pos = 0.0, vel = 0.0;
      for (int i = 0; i < 100; ++i) {
        const ConePoint q0 = rand_cpoint(rng, 2.0, 0.8, 1.5);
        const FrameVecC v0 = sample_cone_dir(rng, kind);
        const ValidationReport c = compare_closed_numeric(q0, v0, 3.0, policy);
        pos = max2(pos, check_value(c, "position_sup"));
        vel = max2(vel, check_value(c, "velocity_sup"));
        drift = max2(drift, check_value(c, "speed_drift"));
        c3_res = max2(c3_res, check_value(c, "first_integral_h_r"));
        c1_res = max2(c1_res, check_value(c, "first_integral_k_r"));
      }
      const std::string base = std::string("cone.") + to_string(kind);
      rep.add_check(base + ".position_sup", pos, 1e-6);
      rep.add_check(base + ".velocity_sup", vel, 1e-6);
    }
  }

  rep.add_check("conservation.speed_drift", drift, 1e-9);
  rep.add_check("conservation.cone_h_r", c3_res, 1e-8);
  rep.add_check("conservation.cone_k_r", c1_res, 1e-8);

  {
    Rng rng(Rng::derive(seed, 23));
    double ode = 0.0, pull = 0.0;
    for (int i = 0; i < 50; ++i) {
      const HalfPlanePoint p0{rng.uniform(-2.0, 2.0), rng.uniform(0.5, 2.0)};
      double theta = rng.uniform(0.0, 6.283185307179586);
      while (std::abs(std::cos(theta)) < 0.2) {
        theta = rng.uniform(0.0, 6.283185307179586);
      }
      const ValidationReport c = totally_geodesic_check(p0, theta, 3.0);
      ode = max2(ode, check_value(c, "ode_residual"));
      pull = max2(pull, check_value(c, "pullback_identity"));
    }
    rep.add_check("halfplane.ode_residual", ode, 1e-6);
    rep.add_check("halfplane.pullback_identity", pull, 1e-12);
  }

  {
    Rng rng(Rng::derive(seed, 24));
    double endpoint = 0.0, ic_err = 0.0;
    for (int i = 0; i < 50; ++i) {
      const ConePoint p = rand_cpoint(rng, 1.0, 0.8, 1.5);
      FrameVecC v{0.0, 0.0, 0.0, 0.0};
      for (;;) {
        const Vec4 raw{rng.normal(), rng.normal(), rng.normal(), rng.normal()};
        const Vec4 u = normalize4(raw);
        v = from_vec(u);
        if (std::abs(v.k) <= 0.8 &&
            max2(std::hypot(v.f, v.g), std::abs(v.h)) >= 0.15) {
          break;
        }
      }
      const double s_true = rng.uniform(0.2, 1.5);
      const ConePoint q =
          cone_geodesic_eval(cone_geodesic_from_ic(p, v), s_true);
      const ShootingResult sr = connect_shooting(p, q, 100, 1e-10);
      endpoint = max2(endpoint, sr.residual);
      ic_err = max2(ic_err, norm(sr.direction - v));
    }
    rep.add_check("shooting.endpoint_residual", endpoint, 1e-8);
    rep.add_check("shooting.ic_recovery", ic_err, 1e-6);
  }

  return rep;
}

ValidationReport run_suite_completeness(std::uint64_t seed) {
  ValidationReport rep;
  rep.suite = "completeness";
  rep.seed = seed;
  rep.n_samples = 3;
  for (const double r0 : {0.1, 1.0, 10.0}) {
    std::ostringstream prefix;
    prefix << "r0_" << r0 << ".";
    rep.merge(incompleteness_witness(r0), prefix.str());
  }

  // Scaling symmetry: the witness scales linearly with r0, exactly.
  const ConeGeodesic g1 =
      cone_geodesic_from_ic({0.0, 0.0, 0.0, 1.0}, {0.0, 0.0, 0.0, -1.0});
  const ConeGeodesic g2 =
      cone_geodesic_from_ic({0.0, 0.0, 0.0, 2.0}, {0.0, 0.0, 0.0, -1.0});
  rep.add_check(
      "radial_scaling_exact",
      std::abs(geodesic_domain(g2).s_max - 2.0 * geodesic_domain(g1).s_max),
      0.0);

  // Contrast case: an arc geodesic never approaches the tip.
  const ConeGeodesic arc =
      cone_geodesic_from_ic({0.0, 0.0, 0.0, 1.0}, {0.0, 0.0, 1.0, 0.0});
  rep.merge(incompleteness_witness(arc), "arc_contrast.");
  return rep;
}

ValidationReport run_suite_all(std::uint64_t seed) {
  ValidationReport rep;
  rep.suite = "all";
  rep.seed = seed;
  rep.n_samples = 1000;
  rep.merge(run_suite_structures(seed), "structures.");
  rep.merge(run_suite_geodesics(seed), "geodesics.");
  rep.merge(run_suite_completeness(seed), "completeness.");
  return rep;
}

}  // namespace heiscone
