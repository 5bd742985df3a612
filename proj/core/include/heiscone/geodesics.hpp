/// Closed-form unit-speed geodesics of (heis, g) and of the cone (C(heis),
/// g_r), classified from initial conditions, with exact evaluation of
/// position and frame velocity and the maximal parameter domain.
///
/// Heisenberg cases (c = h0 is constant along the flow):
///   Line      h0 = 0:   straight horizontal line, t drifts linearly.
///   Vertical  |h0| = 1: fiber line (x0, y0, 2cs + t0).
///   Helix     0<|c|<1:  z traces a Euclidean circle of radius |kappa/(2c)|
///                       centered at z0 - i kappa/(2c); t has a secular term.
///
/// Cone cases (first integrals h r = c3 and k r - s = c1):
///   RadialLine |C| = 0, c3 = 0: (x0, y0, t0, r0 +- s), hits the tip.
///   Arc        |C| = 0, c3 != 0: z frozen, t sweeps a bounded arc.
///   General    |C| > 0, c3 != 0: r(s) = sqrt(s^2 + 2 c1 s + r0^2).
///   HorizontalLimit |C| > 0, c3 = 0: the c3 -> 0 limit of General.
///
/// The general-case t(s) used here carries a 1/c3 factor on the
/// Re(conj(z0) C (e^{i Phi(s)} - e^{i Phi(0)})) term. Published statements
/// of this formula sometimes omit that factor; the form implemented below
/// is the one that satisfies the geodesic ODE (checked against an
/// independent Runge-Kutta integration to ~1e-13, see tests).

#pragma once

#include <complex>

#include "heiscone/cone.hpp"
#include "heiscone/heis.hpp"

namespace heiscone {

/// Classification threshold: a constant with magnitude (or defect from 1)
/// below this is treated as exactly 0 (or 1) and the limit formula is used.
inline constexpr double kCaseTol = 1e-10;

enum class HeisCase { Line, Vertical, Helix };
enum class ConeCase { RadialLine, Arc, General, HorizontalLimit };

const char* to_string(HeisCase c);
const char* to_string(ConeCase c);

struct HeisGeodesic {
  HeisPoint base;
  HeisCase kind = HeisCase::Line;
  double a = 1.0;                       // Line: unit direction (a, b)
  double b = 0.0;
  double c = 0.0;                       // Vertical/Helix: c = h0
  std::complex<double> kappa{0.0, 0.0}; // Helix: kappa = f0 + i g0
};

struct ConeGeodesic {
  ConePoint base;
  ConeCase kind = ConeCase::General;
  double c1 = 0.0;                 // = r0 k0 (snapped to +-r0 for RadialLine)
  double c3 = 0.0;                 // = r0 h0 (snapped to 0 for HorizontalLimit)
  std::complex<double> C{0.0, 0.0};  // = r0 (f0 + i g0) e^{-i phi0}
  double phi0 = 0.0;               // Phi(0)
  double a = 0.0;                  // sqrt(r0^2 - c1^2), 0 for RadialLine
};

/// Open maximal interval of arc-length parameters; infinite ends are
/// +-infinity. Contains 0 by construction.
struct GeodesicDomain {
  double s_min = 0.0;
  double s_max = 0.0;

  bool contains(double s) const { return s > s_min && s < s_max; }
};

/// Classifies by c = h0 against kCaseTol; v0 must be unit within kUnitTol.
HeisGeodesic heis_geodesic_from_ic(const HeisPoint& p0, const FrameVecH& v0);

HeisPoint heis_geodesic_eval(const HeisGeodesic& geo, double s);

/// Line (a, b, 0); Vertical (0, 0, c); Helix (kappa e^{-2ics}, c). Unit.
FrameVecH heis_geodesic_velocity(const HeisGeodesic& geo, double s);

/// Constants c1 = r0 k0, c3 = r0 h0, C = r0 (f0 + i g0) e^{-i Phi(0)};
/// v0 must be unit within kUnitTol and q0.r > kConeRadiusMin.
ConeGeodesic cone_geodesic_from_ic(const ConePoint& q0, const FrameVecC& v0);

/// Throws std::domain_error outside the maximal domain (r would vanish).
ConePoint cone_geodesic_eval(const ConeGeodesic& geo, double s);

/// f + ig = C e^{i Phi(s)} / r, h = c3 / r, k = (s + c1) / r. Unit.
FrameVecC cone_geodesic_velocity(const ConeGeodesic& geo, double s);

/// (-inf, inf) unless the geodesic is radial, in which case the half-line
/// on which r = +-s + r0 stays positive.
GeodesicDomain geodesic_domain(const ConeGeodesic& geo);

}  // namespace heiscone
