#include "heiscone/heis.hpp"

namespace heiscone {

HeisPoint group_mul(const HeisPoint& p, const HeisPoint& q) {
  // Im(z conj(w)) = y_p x_q - x_p y_q for z = p, w = q.
  const double im = p.y * q.x - p.x * q.y;
  return {p.x + q.x, p.y + q.y, p.t + q.t + 2.0 * im};
}

HeisPoint group_inv(const HeisPoint& p) {
  // The twist term vanishes for q = -p, so the inverse is plain negation.
  return {-p.x, -p.y, -p.t};
}

CoordVecH frame_at(const HeisPoint& p, FrameLabelH label) {
  switch (label) {
    case FrameLabelH::X:
      return {1.0, 0.0, 2.0 * p.y};
    case FrameLabelH::Y:
      return {0.0, 1.0, -2.0 * p.x};
    case FrameLabelH::Ttilde:
      return {0.0, 0.0, 2.0};
  }
  throw std::logic_error("frame_at: bad label");
}

double contact_form(const HeisPoint& p, const CoordVecH& v) {
  return v.dt + 2.0 * p.x * v.dy - 2.0 * p.y * v.dx;
}

double contact_form_half(const HeisPoint& p, const CoordVecH& v) {
  return 0.5 * contact_form(p, v);
}

double metric_g(const HeisPoint& p, const CoordVecH& u, const CoordVecH& v,
                MetricParamL L) {
  return u.dx * v.dx + u.dy * v.dy +
         L.value() * contact_form(p, u) * contact_form(p, v);
}

FrameVecH frame_decompose(const HeisPoint& p, const CoordVecH& v) {
  return {v.dx, v.dy, contact_form_half(p, v)};
}

CoordVecH frame_compose(const HeisPoint& p, const FrameVecH& v) {
  // f X + g Y + h Ttilde in coordinates.
  return {v.f, v.g, 2.0 * v.h - 2.0 * p.x * v.g + 2.0 * p.y * v.f};
}

FrameVecH lie_bracket(FrameLabelH a, FrameLabelH b) {
  if (a == FrameLabelH::X && b == FrameLabelH::Y) return {0.0, 0.0, -2.0};
  if (a == FrameLabelH::Y && b == FrameLabelH::X) return {0.0, 0.0, 2.0};
  return {};
}

FrameVecH connection_h(FrameLabelH a, FrameLabelH b) {
  using L = FrameLabelH;
  switch (a) {
    case L::X:
      if (b == L::Y) return {0.0, 0.0, -1.0};       // D_X Y = -Ttilde
      if (b == L::Ttilde) return {0.0, 1.0, 0.0};   // D_X Ttilde = Y
      return {};
    case L::Y:
      if (b == L::X) return {0.0, 0.0, 1.0};        // D_Y X = Ttilde
      if (b == L::Ttilde) return {-1.0, 0.0, 0.0};  // D_Y Ttilde = -X
      return {};
    case L::Ttilde:
      if (b == L::X) return {0.0, 1.0, 0.0};        // D_T X = Y
      if (b == L::Y) return {-1.0, 0.0, 0.0};       // D_T Y = -X
      return {};
  }
  throw std::logic_error("connection_h: bad label");
}

FrameVecH phi_apply(const FrameVecH& v) { return {-v.g, v.f, 0.0}; }

double norm(const FrameVecH& v) {
  return std::sqrt(v.f * v.f + v.g * v.g + v.h * v.h);
}

bool is_unit(const FrameVecH& v, double tol) {
  return std::abs(norm(v) - 1.0) <= tol;
}

FrameVecH normalized(const FrameVecH& v) {
  const double n = norm(v);
  if (!(n > 0.0) || !std::isfinite(n))
    throw std::invalid_argument("normalized: zero or non-finite frame vector");
  return {v.f / n, v.g / n, v.h / n};
}

}  // namespace heiscone
