/// Heisenberg group C x R with its left-invariant contact metric structure.
///
/// Coordinates are (x, y, t); the group product is
///   (z, t) * (w, s) = (z + w, t + s + 2 Im(z conj(w))),  z = x + iy.
/// The orthonormal frame for the Sasakian metric g = dx^2 + dy^2 + (1/4) w^2
/// (w the contact form dt + 2x dy - 2y dx) is {X, Y, Ttilde}:
///   X = d/dx + 2y d/dt,  Y = d/dy - 2x d/dt,  Ttilde = 2 d/dt.
/// All tangent data that crosses module boundaries is expressed in this frame;
/// coordinate vectors appear only at the ingestion boundary.

#pragma once

#include <cmath>
#include <stdexcept>

namespace heiscone {

/// Tolerance for accepting a frame vector as unit length. Inputs outside it
/// are rejected, not silently renormalized; callers opt in via normalized().
inline constexpr double kUnitTol = 1e-9;

struct HeisPoint {
  double x = 0.0;
  double y = 0.0;
  double t = 0.0;
};

/// Tangent vector in the coordinate basis d/dx, d/dy, d/dt.
struct CoordVecH {
  double dx = 0.0;
  double dy = 0.0;
  double dt = 0.0;
};

/// Tangent vector in the orthonormal frame {X, Y, Ttilde}.
struct FrameVecH {
  double f = 0.0;  // X component
  double g = 0.0;  // Y component
  double h = 0.0;  // Ttilde component
};

enum class FrameLabelH { X, Y, Ttilde };

/// Scale L in the metric family g_L = dx^2 + dy^2 + L w^2. Must be positive.
/// L = 1/4 is the contact-metric (Sasakian) case and the default everywhere.
class MetricParamL {
 public:
  explicit MetricParamL(double L) : value_(L) {
    if (!(L > 0.0) || !std::isfinite(L))
      throw std::invalid_argument("MetricParamL: L must be positive and finite");
  }
  double value() const { return value_; }
  static MetricParamL sasakian() { return MetricParamL(0.25); }

 private:
  double value_;
};

HeisPoint group_mul(const HeisPoint& p, const HeisPoint& q);
HeisPoint group_inv(const HeisPoint& p);

/// Coordinate expression of a frame field at p.
CoordVecH frame_at(const HeisPoint& p, FrameLabelH label);

/// Contact form w = dt + 2x dy - 2y dx, and its half w~ = w / 2.
/// ker w is spanned by X and Y; w~(Ttilde) = 1.
double contact_form(const HeisPoint& p, const CoordVecH& v);
double contact_form_half(const HeisPoint& p, const CoordVecH& v);

/// Riemannian metric g_L(u, v) = dx(u)dx(v) + dy(u)dy(v) + L w(u)w(v).
double metric_g(const HeisPoint& p, const CoordVecH& u, const CoordVecH& v,
                MetricParamL L = MetricParamL::sasakian());

/// Frame components (f, g, h) of a coordinate vector:
///   f = dx(v), g = dy(v), h = (1/2)(dt(v) + 2x dy(v) - 2y dx(v)) = w~(v).
FrameVecH frame_decompose(const HeisPoint& p, const CoordVecH& v);
CoordVecH frame_compose(const HeisPoint& p, const FrameVecH& v);

/// Structure constants in the {X, Y, Ttilde} basis. The only nonzero bracket
/// is [X, Y] = -2 Ttilde.
FrameVecH lie_bracket(FrameLabelH a, FrameLabelH b);

/// Levi-Civita connection of g on frame fields (constant coefficients):
///   D_X X = 0      D_X Y = -Ttilde   D_X Ttilde = Y
///   D_Y X = Ttilde D_Y Y = 0         D_Y Ttilde = -X
///   D_T X = Y      D_T Y = -X        D_T Ttilde = 0
FrameVecH connection_h(FrameLabelH a, FrameLabelH b);

/// CR endomorphism extended by phi(Ttilde) = 0: (f, g, h) -> (-g, f, 0).
FrameVecH phi_apply(const FrameVecH& v);

double norm(const FrameVecH& v);
bool is_unit(const FrameVecH& v, double tol = kUnitTol);
FrameVecH normalized(const FrameVecH& v);

inline FrameVecH operator+(const FrameVecH& a, const FrameVecH& b) {
  return {a.f + b.f, a.g + b.g, a.h + b.h};
}
inline FrameVecH operator-(const FrameVecH& a, const FrameVecH& b) {
  return {a.f - b.f, a.g - b.g, a.h - b.h};
}
inline FrameVecH operator*(double c, const FrameVecH& v) {
  return {c * v.f, c * v.g, c * v.h};
}

}  // namespace heiscone
