#include "heiscone/geodesics.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace heiscone {

namespace {

using cplx = std::complex<double>;

constexpr cplx kI{0.0, 1.0};

/// r(s) for the non-radial cone cases; throws when the point would leave
/// the cone (possible only when a is below the radius guard).
double cone_radius_at(const ConeGeodesic& geo, double s) {
  double r;
  if (geo.kind == ConeCase::RadialLine) {
    r = (geo.c1 > 0.0) ? geo.base.r + s : geo.base.r - s;
  } else {
    const double r0 = geo.base.r;
    r = std::sqrt(std::fmax(0.0, s * s + 2.0 * geo.c1 * s + r0 * r0));
  }
  if (!(r > kConeRadiusMin)) {
    throw std::domain_error("parameter outside the geodesic's maximal domain");
  }
  return r;
}

double phi_at(const ConeGeodesic& geo, double s) {
  if (geo.c3 == 0.0) return 0.0;
  return -(2.0 * geo.c3 / geo.a) * std::atan((s + geo.c1) / geo.a);
}

}  // namespace

const char* to_string(HeisCase c) {
  switch (c) {
    case HeisCase::Line: return "line";
    case HeisCase::Vertical: return "vertical";
    case HeisCase::Helix: return "helix";
  }
  return "?";
}

const char* to_string(ConeCase c) {
  switch (c) {
    case ConeCase::RadialLine: return "radial";
    case ConeCase::Arc: return "arc";
    case ConeCase::General: return "general";
    case ConeCase::HorizontalLimit: return "horizontal";
  }
  return "?";
}

HeisGeodesic heis_geodesic_from_ic(const HeisPoint& p0, const FrameVecH& v0) {
  if (!is_unit(v0)) {
    throw std::invalid_argument("initial velocity must be unit in the frame metric");
  }
  HeisGeodesic geo;
  geo.base = p0;
  if (std::abs(v0.h) < kCaseTol) {
    geo.kind = HeisCase::Line;
    geo.a = v0.f;
    geo.b = v0.g;
  } else if (1.0 - std::abs(v0.h) < kCaseTol) {
    geo.kind = HeisCase::Vertical;
    geo.c = (v0.h > 0.0) ? 1.0 : -1.0;
  } else {
    geo.kind = HeisCase::Helix;
    geo.c = v0.h;
    geo.kappa = {v0.f, v0.g};
  }
  return geo;
}

HeisPoint heis_geodesic_eval(const HeisGeodesic& geo, double s) {
  const double x0 = geo.base.x;
  const double y0 = geo.base.y;
  const double t0 = geo.base.t;
  switch (geo.kind) {
    case HeisCase::Line:
      return {geo.a * s + x0, geo.b * s + y0,
              2.0 * (geo.a * y0 - geo.b * x0) * s + t0};
    case HeisCase::Vertical:
      return {x0, y0, 2.0 * geo.c * s + t0};
    case HeisCase::Helix: {
      const double c = geo.c;
      if (std::abs(c) < kCaseTol) {
        const double a = geo.kappa.real();
        const double b = geo.kappa.imag();
        return {a * s + x0, b * s + y0, 2.0 * (a * y0 - b * x0) * s + t0};
      }
      const cplx z0{x0, y0};
      const cplx E = std::exp(-2.0 * kI * c * s) - 1.0;
      const cplx z = kI * geo.kappa * E / (2.0 * c) + z0;
      const double t =
          t0 + (1.0 / c) * ((1.0 + c * c) * s -
                            (1.0 - c * c) * std::sin(2.0 * c * s) / (2.0 * c) -
                            (std::conj(z0) * geo.kappa * E).real());
      return {z.real(), z.imag(), t};
    }
  }
  throw std::invalid_argument("unknown geodesic case");
}

FrameVecH heis_geodesic_velocity(const HeisGeodesic& geo, double s) {
  switch (geo.kind) {
    case HeisCase::Line:
      return {geo.a, geo.b, 0.0};
    case HeisCase::Vertical:
      return {0.0, 0.0, geo.c};
    case HeisCase::Helix: {
      const cplx F = geo.kappa * std::exp(-2.0 * kI * geo.c * s);
      return {F.real(), F.imag(), geo.c};
    }
  }
  throw std::invalid_argument("unknown geodesic case");
}

ConeGeodesic cone_geodesic_from_ic(const ConePoint& q0, const FrameVecC& v0) {
  if (!(q0.r > kConeRadiusMin)) {
    throw std::domain_error("cone point radius must exceed kConeRadiusMin");
  }
  if (!is_unit(v0)) {
    throw std::invalid_argument("initial velocity must be unit in the frame metric");
  }
  ConeGeodesic geo;
  geo.base = q0;
  const double r0 = q0.r;
  const double planar = std::hypot(v0.f, v0.g);
  if (planar < kCaseTol && std::abs(v0.h) < kCaseTol) {
    geo.kind = ConeCase::RadialLine;
    geo.c1 = std::copysign(r0, v0.k);
    return geo;
  }
  geo.c1 = r0 * v0.k;
  geo.c3 = r0 * v0.h;
  // a^2 = r0^2 - c1^2 = r0^2 (f0^2 + g0^2 + h0^2) for unit v0; the second
  // form stays positive when |k0| is within rounding of 1.
  geo.a = r0 * std::sqrt(v0.f * v0.f + v0.g * v0.g + v0.h * v0.h);
  if (planar < kCaseTol) {
    geo.kind = ConeCase::Arc;
    geo.phi0 = phi_at(geo, 0.0);
    return geo;
  }
  if (std::abs(v0.h) < kCaseTol) {
    geo.kind = ConeCase::HorizontalLimit;
    geo.c3 = 0.0;
    geo.C = r0 * cplx{v0.f, v0.g};
    return geo;
  }
  geo.kind = ConeCase::General;
  geo.phi0 = phi_at(geo, 0.0);
  geo.C = r0 * cplx{v0.f, v0.g} * std::exp(-kI * geo.phi0);
  return geo;
}

ConePoint cone_geodesic_eval(const ConeGeodesic& geo, double s) {
  const double r = cone_radius_at(geo, s);
  const double x0 = geo.base.x;
  const double y0 = geo.base.y;
  const double t0 = geo.base.t;
  const cplx z0{x0, y0};
  switch (geo.kind) {
    case ConeCase::RadialLine:
      return {x0, y0, t0, r};
    case ConeCase::Arc: {
      // Continuous branch of the arc angle: the path (r0^2 + c1 s, s a)
      // never crosses the negative real axis, so atan2 needs no unwrapping.
      const double theta = std::atan2(s * geo.a, geo.base.r * geo.base.r + geo.c1 * s);
      return {x0, y0, t0 + (2.0 * geo.c3 / geo.a) * theta, r};
    }
    case ConeCase::HorizontalLimit: {
      const double theta =
          std::atan((s + geo.c1) / geo.a) - std::atan(geo.c1 / geo.a);
      const cplx z = z0 + geo.C * theta / geo.a;
      const double t =
          t0 - 2.0 * (std::conj(z0) * geo.C).imag() * theta / geo.a;
      return {z.real(), z.imag(), t, r};
    }
    case ConeCase::General: {
      const double phi = phi_at(geo, s);
      const cplx E = std::exp(kI * phi) - std::exp(kI * geo.phi0);
      const cplx z = kI * geo.C * E / (2.0 * geo.c3) + z0;
      const double q = std::norm(geo.C) / (2.0 * geo.c3 * geo.c3);
      const double dphi = phi - geo.phi0;
      const double t = t0 - (1.0 + q) * dphi + q * std::sin(dphi) -
                       (std::conj(z0) * geo.C * E).real() / geo.c3;
      return {z.real(), z.imag(), t, r};
    }
  }
  throw std::invalid_argument("unknown geodesic case");
}

FrameVecC cone_geodesic_velocity(const ConeGeodesic& geo, double s) {
  const double r = cone_radius_at(geo, s);
  const cplx F = geo.C * std::exp(kI * phi_at(geo, s)) / r;
  return {F.real(), F.imag(), geo.c3 / r, (s + geo.c1) / r};
}

GeodesicDomain geodesic_domain(const ConeGeodesic& geo) {
  constexpr double inf = std::numeric_limits<double>::infinity();
  if (geo.kind == ConeCase::RadialLine) {
    if (geo.c1 > 0.0) return {-geo.base.r, inf};
    return {-inf, geo.base.r};
  }
  return {-inf, inf};
}

}  // namespace heiscone
