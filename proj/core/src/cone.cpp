#include "heiscone/cone.hpp"

#include <cmath>
#include <stdexcept>

namespace heiscone {

namespace {

void require_radius(double r) {
  if (!(r > kConeRadiusMin)) {
    throw std::domain_error("cone point radius must exceed kConeRadiusMin");
  }
}

}  // namespace

double cone_metric(const ConePoint& q, const CoordVecC& u, const CoordVecC& v) {
  require_radius(q.r);
  const CoordVecH uh{u.dx, u.dy, u.dt};
  const CoordVecH vh{v.dx, v.dy, v.dt};
  return u.dr * v.dr + q.r * q.r * metric_g(q.base(), uh, vh);
}

CoordVecC cone_frame_at(const ConePoint& q, FrameLabelC label) {
  require_radius(q.r);
  switch (label) {
    case FrameLabelC::Xr: {
      const CoordVecH e = frame_at(q.base(), FrameLabelH::X);
      return {e.dx / q.r, e.dy / q.r, e.dt / q.r, 0.0};
    }
    case FrameLabelC::Yr: {
      const CoordVecH e = frame_at(q.base(), FrameLabelH::Y);
      return {e.dx / q.r, e.dy / q.r, e.dt / q.r, 0.0};
    }
    case FrameLabelC::Tr: {
      const CoordVecH e = frame_at(q.base(), FrameLabelH::Ttilde);
      return {e.dx / q.r, e.dy / q.r, e.dt / q.r, 0.0};
    }
    case FrameLabelC::Rr:
      return {0.0, 0.0, 0.0, 1.0};
  }
  throw std::invalid_argument("unknown cone frame label");
}

FrameVecC frame_decompose_cone(const ConePoint& q, const CoordVecC& v) {
  require_radius(q.r);
  const FrameVecH b = frame_decompose(q.base(), {v.dx, v.dy, v.dt});
  return {q.r * b.f, q.r * b.g, q.r * b.h, v.dr};
}

CoordVecC frame_compose_cone(const ConePoint& q, const FrameVecC& v) {
  require_radius(q.r);
  const CoordVecH c = frame_compose(q.base(), {v.f / q.r, v.g / q.r, v.h / q.r});
  return {c.dx, c.dy, c.dt, v.k};
}

FrameVecC j_apply(const FrameVecC& v) { return {-v.g, v.f, v.k, -v.h}; }

double fundamental_form(const ConePoint& q, const CoordVecC& u,
                        const CoordVecC& v) {
  require_radius(q.r);
  const double wu = contact_form(q.base(), {u.dx, u.dy, u.dt});
  const double wv = contact_form(q.base(), {v.dx, v.dy, v.dt});
  const double dxdy = u.dx * v.dy - u.dy * v.dx;
  return 0.5 * q.r * (u.dr * wv - v.dr * wu) + q.r * q.r * dxdy;
}

FrameVecC connection_c(FrameLabelC a, FrameLabelC b, double r) {
  require_radius(r);
  const double s = 1.0 / r;
  using L = FrameLabelC;
  if (a == L::Rr) return {0.0, 0.0, 0.0, 0.0};
  switch (a) {
    case L::Xr:
      switch (b) {
        case L::Xr: return {0.0, 0.0, 0.0, -s};
        case L::Yr: return {0.0, 0.0, -s, 0.0};
        case L::Tr: return {0.0, s, 0.0, 0.0};
        case L::Rr: return {s, 0.0, 0.0, 0.0};
      }
      break;
    case L::Yr:
      switch (b) {
        case L::Xr: return {0.0, 0.0, s, 0.0};
        case L::Yr: return {0.0, 0.0, 0.0, -s};
        case L::Tr: return {-s, 0.0, 0.0, 0.0};
        case L::Rr: return {0.0, s, 0.0, 0.0};
      }
      break;
    case L::Tr:
      switch (b) {
        case L::Xr: return {0.0, s, 0.0, 0.0};
        case L::Yr: return {-s, 0.0, 0.0, 0.0};
        case L::Tr: return {0.0, 0.0, 0.0, -s};
        case L::Rr: return {0.0, 0.0, s, 0.0};
      }
      break;
    case L::Rr:
      break;
  }
  throw std::invalid_argument("unknown cone frame label");
}

FrameVecC lie_bracket_cone(FrameLabelC a, FrameLabelC b, double r) {
  require_radius(r);
  const double s = 1.0 / r;
  using L = FrameLabelC;
  if (a == b) return {0.0, 0.0, 0.0, 0.0};
  if (a == L::Xr && b == L::Yr) return {0.0, 0.0, -2.0 * s, 0.0};
  if (a == L::Yr && b == L::Xr) return {0.0, 0.0, 2.0 * s, 0.0};
  if (b == L::Rr) {
    switch (a) {
      case L::Xr: return {s, 0.0, 0.0, 0.0};
      case L::Yr: return {0.0, s, 0.0, 0.0};
      case L::Tr: return {0.0, 0.0, s, 0.0};
      case L::Rr: break;
    }
  }
  if (a == L::Rr) {
    const FrameVecC v = lie_bracket_cone(b, a, r);
    return {-v.f, -v.g, -v.h, -v.k};
  }
  return {0.0, 0.0, 0.0, 0.0};
}

double norm(const FrameVecC& v) {
  return std::sqrt(v.f * v.f + v.g * v.g + v.h * v.h + v.k * v.k);
}

bool is_unit(const FrameVecC& v, double tol) {
  return std::abs(norm(v) - 1.0) <= tol;
}

FrameVecC normalized(const FrameVecC& v) {
  const double n = norm(v);
  if (n == 0.0) throw std::invalid_argument("cannot normalize zero vector");
  return (1.0 / n) * v;
}

}  // namespace heiscone
