/// Independent numerical oracle for the geodesic flows: first-order systems
/// in coordinates + frame velocity, integrated by classical RK4 (fixed step)
/// or Dormand-Prince 5(4) (adaptive). The coordinate reconstruction inverts
/// the frame definitions: on heis, xdot = f, ydot = g,
/// tdot = 2h - 2xg + 2yf; on the cone the same divided by r, rdot = k.
///
/// Cone integration enforces the floor r > kIntegrateRadiusMin. When a step
/// would cross it, the final step is bisected onto the boundary and the
/// trace is returned up to that point with `breached` set; `breach_s`
/// approximates the crossing parameter to ~1e-12.

#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "heiscone/cone.hpp"
#include "heiscone/heis.hpp"

namespace heiscone {

/// Coarser than kConeRadiusMin so adaptive steps stop before the k-equation
/// (1 - k^2)/r stiffens.
inline constexpr double kIntegrateRadiusMin = 1e-9;

struct HeisState {
  double x = 0.0, y = 0.0, t = 0.0;
  double f = 0.0, g = 0.0, h = 0.0;
};

struct ConeState {
  double x = 0.0, y = 0.0, t = 0.0, r = 1.0;
  double f = 0.0, g = 0.0, h = 0.0, k = 0.0;
};

HeisState make_state(const HeisPoint& p, const FrameVecH& v);
ConeState make_state(const ConePoint& q, const FrameVecC& v);
HeisPoint point_of(const HeisState& s);
ConePoint point_of(const ConeState& s);
FrameVecH velocity_of(const HeisState& s);
FrameVecC velocity_of(const ConeState& s);

/// Frame speed sqrt(f^2 + g^2 + h^2 (+ k^2)); conserved by the exact flow.
double speed(const HeisState& s);
double speed(const ConeState& s);

/// Geodesic systems. cone_rhs throws std::domain_error at or below the
/// radius floor; the integrator never evaluates it there.
HeisState heis_rhs(const HeisState& s);
ConeState cone_rhs(const ConeState& s);

struct StepPolicy {
  enum class Kind { Fixed, Adaptive };

  Kind kind = Kind::Fixed;
  double step = 1e-3;      // fixed mode
  double rel_tol = 1e-10;  // adaptive mode
  double abs_tol = 1e-12;
  double max_step = 1e-1;

  static StepPolicy fixed(double step = 1e-3);
  static StepPolicy adaptive(double rel_tol = 1e-10, double abs_tol = 1e-12,
                             double max_step = 1e-1);
  /// Throws std::invalid_argument on a non-positive step or tolerance.
  void validate() const;
};

template <class State>
struct TraceRow {
  double s = 0.0;
  State state;
  State deriv;  // rhs at (s, state), stored for dense output
};

/// Sampled trajectory. Rows are strictly monotone in s, increasing for
/// forward integration and decreasing for reverse (s_end < 0); the first
/// row is always the initial condition at s = 0.
template <class State>
struct Trace {
  std::vector<TraceRow<State>> rows;
  std::string integrator;  // "rk4" or "rk45"
  StepPolicy policy;
  bool breached = false;
  double breach_s = 0.0;        // meaningful only when breached
  double wall_time_sec = 0.0;   // informational; excluded from serialization

  double s_front() const { return rows.front().s; }
  double s_back() const { return rows.back().s; }
};

using HeisTrace = Trace<HeisState>;
using ConeTrace = Trace<ConeState>;

using HeisRhs = HeisState (*)(const HeisState&);
using ConeRhs = ConeState (*)(const ConeState&);

/// Integrates rhs from s = 0 to s_end (negative runs in reverse). Throws
/// std::runtime_error on adaptive step underflow.
HeisTrace integrate(HeisRhs rhs, const HeisState& state0, double s_end,
                    const StepPolicy& policy);
ConeTrace integrate(ConeRhs rhs, const ConeState& state0, double s_end,
                    const StepPolicy& policy);

/// Dense output by cubic Hermite interpolation between stored rows (exact
/// at stored nodes). Each s must lie within the trace's parameter range;
/// throws std::invalid_argument otherwise.
HeisTrace resample(const HeisTrace& trace, const std::vector<double>& s_values);
ConeTrace resample(const ConeTrace& trace, const std::vector<double>& s_values);

}  // namespace heiscone
