/// Metric cone over the Heisenberg group: points (x, y, t, r) with r > 0 and
/// metric g_r = dr^2 + r^2 g, where g is the Sasakian metric of heis.hpp.
/// The orthonormal frame is {X_r, Y_r, T_r, R_r} = {X/r, Y/r, Ttilde/r, d/dr}.
/// The complex structure J and the fundamental 2-form Omega (the exterior
/// derivative of (r^2/4) w) make the cone a Kaehler manifold.

#pragma once

#include "heiscone/heis.hpp"

namespace heiscone {

/// Radius guard: operations reject r at or below this, since the metric
/// degenerates at the (open) tip r = 0.
inline constexpr double kConeRadiusMin = 1e-12;

struct ConePoint {
  double x = 0.0;
  double y = 0.0;
  double t = 0.0;
  double r = 1.0;

  HeisPoint base() const { return {x, y, t}; }
};

struct CoordVecC {
  double dx = 0.0;
  double dy = 0.0;
  double dt = 0.0;
  double dr = 0.0;
};

/// Components (f, g, h, k) on {X_r, Y_r, T_r, R_r}.
struct FrameVecC {
  double f = 0.0;
  double g = 0.0;
  double h = 0.0;
  double k = 0.0;
};

enum class FrameLabelC { Xr, Yr, Tr, Rr };

double cone_metric(const ConePoint& q, const CoordVecC& u, const CoordVecC& v);

CoordVecC cone_frame_at(const ConePoint& q, FrameLabelC label);

/// f = r dx(v), g = r dy(v), h = (r/2)(dt(v) + 2x dy(v) - 2y dx(v)), k = dr(v).
FrameVecC frame_decompose_cone(const ConePoint& q, const CoordVecC& v);
CoordVecC frame_compose_cone(const ConePoint& q, const FrameVecC& v);

/// Complex structure on frame components: (f, g, h, k) -> (-g, f, k, -h).
FrameVecC j_apply(const FrameVecC& v);

/// Fundamental 2-form Omega = (r/2) dr ^ w + r^2 dx ^ dy, evaluated on
/// coordinate vectors. Equals cone_metric(q, J u, v).
double fundamental_form(const ConePoint& q, const CoordVecC& u,
                        const CoordVecC& v);

/// Levi-Civita connection of g_r on frame fields; every entry scales as 1/r
/// and D_{R_r} of anything vanishes:
///   D_X X = -(1/r)R   D_Y X =  (1/r)T   D_T X =  (1/r)Y
///   D_X Y = -(1/r)T   D_Y Y = -(1/r)R   D_T Y = -(1/r)X
///   D_X T =  (1/r)Y   D_Y T = -(1/r)X   D_T T = -(1/r)R
///   D_X R =  (1/r)X   D_Y R =  (1/r)Y   D_T R =  (1/r)T
FrameVecC connection_c(FrameLabelC a, FrameLabelC b, double r);

/// Nonzero brackets: [X_r,Y_r] = -(2/r)T_r and [E,R_r] = (1/r)E for
/// E in {X_r, Y_r, T_r}.
FrameVecC lie_bracket_cone(FrameLabelC a, FrameLabelC b, double r);

double norm(const FrameVecC& v);
bool is_unit(const FrameVecC& v, double tol = kUnitTol);
FrameVecC normalized(const FrameVecC& v);

inline FrameVecC operator+(const FrameVecC& a, const FrameVecC& b) {
  return {a.f + b.f, a.g + b.g, a.h + b.h, a.k + b.k};
}
inline FrameVecC operator-(const FrameVecC& a, const FrameVecC& b) {
  return {a.f - b.f, a.g - b.g, a.h - b.h, a.k - b.k};
}
inline FrameVecC operator*(double c, const FrameVecC& v) {
  return {c * v.f, c * v.g, c * v.h, c * v.k};
}

}  // namespace heiscone
