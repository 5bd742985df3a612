#include "heiscone/integrate.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <optional>
#include <stdexcept>

namespace heiscone {

namespace {

template <class State>
struct SysTraits;

template <>
struct SysTraits<HeisState> {
  static constexpr std::size_t n = 6;
  using Array = std::array<double, 6>;
  static Array to(const HeisState& s) { return {s.x, s.y, s.t, s.f, s.g, s.h}; }
  static HeisState from(const Array& a) {
    return {a[0], a[1], a[2], a[3], a[4], a[5]};
  }
  static bool valid(const HeisState&) { return true; }
};

template <>
struct SysTraits<ConeState> {
  static constexpr std::size_t n = 8;
  using Array = std::array<double, 8>;
  static Array to(const ConeState& s) {
    return {s.x, s.y, s.t, s.r, s.f, s.g, s.h, s.k};
  }
  static ConeState from(const Array& a) {
    return {a[0], a[1], a[2], a[3], a[4], a[5], a[6], a[7]};
  }
  static bool valid(const ConeState& s) { return s.r > kIntegrateRadiusMin; }
};

template <std::size_t N>
std::array<double, N> axpy(const std::array<double, N>& y, double c,
                           const std::array<double, N>& d) {
  std::array<double, N> out;
  for (std::size_t i = 0; i < N; ++i) out[i] = y[i] + c * d[i];
  return out;
}

/// rhs evaluated through the domain guard; nullopt when the stage point has
/// left the valid region (cone radius floor).
template <class State, class Rhs>
std::optional<typename SysTraits<State>::Array> eval(
    Rhs rhs, const typename SysTraits<State>::Array& y) {
  using T = SysTraits<State>;
  const State st = T::from(y);
  if (!T::valid(st)) return std::nullopt;
  return T::to(rhs(st));
}

template <class State, class Rhs>
struct StepResult {
  typename SysTraits<State>::Array y_new;
  double err_norm = 0.0;  // scaled local error estimate (adaptive only)
};

template <class State, class Rhs>
std::optional<StepResult<State, Rhs>> rk4_step(
    Rhs rhs, const typename SysTraits<State>::Array& y,
    const typename SysTraits<State>::Array& k1, double h) {
  using T = SysTraits<State>;
  const auto k2 = eval<State>(rhs, axpy(y, 0.5 * h, k1));
  if (!k2) return std::nullopt;
  const auto k3 = eval<State>(rhs, axpy(y, 0.5 * h, *k2));
  if (!k3) return std::nullopt;
  const auto k4 = eval<State>(rhs, axpy(y, h, *k3));
  if (!k4) return std::nullopt;
  typename T::Array out;
  for (std::size_t i = 0; i < T::n; ++i) {
    out[i] = y[i] + (h / 6.0) * (k1[i] + 2.0 * (*k2)[i] + 2.0 * (*k3)[i] + (*k4)[i]);
  }
  if (!T::valid(T::from(out))) return std::nullopt;
  return StepResult<State, Rhs>{out, 0.0};
}

/// Dormand-Prince 5(4): the advance is the 5th-order solution, the error
/// estimate is the difference against the embedded 4th-order one.
template <class State, class Rhs>
std::optional<StepResult<State, Rhs>> dopri_step(
    Rhs rhs, const typename SysTraits<State>::Array& y,
    const typename SysTraits<State>::Array& k1, double h, double rel_tol,
    double abs_tol) {
  using T = SysTraits<State>;
  using Array = typename T::Array;
  constexpr double a21 = 1.0 / 5.0;
  constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
  constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
  constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0,
                   a53 = 64448.0 / 6561.0, a54 = -212.0 / 729.0;
  constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0,
                   a63 = 46732.0 / 5247.0, a64 = 49.0 / 176.0,
                   a65 = -5103.0 / 18656.0;
  constexpr double b1 = 35.0 / 384.0, b3 = 500.0 / 1113.0, b4 = 125.0 / 192.0,
                   b5 = -2187.0 / 6784.0, b6 = 11.0 / 84.0;
  constexpr double e1 = 71.0 / 57600.0, e3 = -71.0 / 16695.0,
                   e4 = 71.0 / 1920.0, e5 = -17253.0 / 339200.0,
                   e6 = 22.0 / 525.0, e7 = -1.0 / 40.0;

  Array st;
  for (std::size_t i = 0; i < T::n; ++i) st[i] = y[i] + h * a21 * k1[i];
  const auto k2 = eval<State>(rhs, st);
  if (!k2) return std::nullopt;
  for (std::size_t i = 0; i < T::n; ++i)
    st[i] = y[i] + h * (a31 * k1[i] + a32 * (*k2)[i]);
  const auto k3 = eval<State>(rhs, st);
  if (!k3) return std::nullopt;
  for (std::size_t i = 0; i < T::n; ++i)
    st[i] = y[i] + h * (a41 * k1[i] + a42 * (*k2)[i] + a43 * (*k3)[i]);
  const auto k4 = eval<State>(rhs, st);
  if (!k4) return std::nullopt;
  for (std::size_t i = 0; i < T::n; ++i)
    st[i] = y[i] + h * (a51 * k1[i] + a52 * (*k2)[i] + a53 * (*k3)[i] +
                        a54 * (*k4)[i]);
  const auto k5 = eval<State>(rhs, st);
  if (!k5) return std::nullopt;
  for (std::size_t i = 0; i < T::n; ++i)
    st[i] = y[i] + h * (a61 * k1[i] + a62 * (*k2)[i] + a63 * (*k3)[i] +
                        a64 * (*k4)[i] + a65 * (*k5)[i]);
  const auto k6 = eval<State>(rhs, st);
  if (!k6) return std::nullopt;
  Array out;
  for (std::size_t i = 0; i < T::n; ++i) {
    out[i] = y[i] + h * (b1 * k1[i] + b3 * (*k3)[i] + b4 * (*k4)[i] +
                         b5 * (*k5)[i] + b6 * (*k6)[i]);
  }
  const auto k7 = eval<State>(rhs, out);
  if (!k7) return std::nullopt;
  double sum = 0.0;
  for (std::size_t i = 0; i < T::n; ++i) {
    const double err = h * (e1 * k1[i] + e3 * (*k3)[i] + e4 * (*k4)[i] +
                            e5 * (*k5)[i] + e6 * (*k6)[i] + e7 * (*k7)[i]);
    const double scale =
        abs_tol + rel_tol * std::max(std::abs(y[i]), std::abs(out[i]));
    sum += (err / scale) * (err / scale);
  }
  return StepResult<State, Rhs>{out, std::sqrt(sum / static_cast<double>(T::n))};
}

template <class State, class Rhs>
Trace<State> run(Rhs rhs, const State& state0, double s_end,
                 const StepPolicy& policy) {
  using T = SysTraits<State>;
  using Array = typename T::Array;
  policy.validate();
  if (!T::valid(state0)) {
    throw std::domain_error("initial state outside the integrable domain");
  }
  const auto t_start = std::chrono::steady_clock::now();

  Trace<State> tr;
  tr.policy = policy;
  tr.integrator = policy.kind == StepPolicy::Kind::Fixed ? "rk4" : "rk45";

  const double dir = (s_end < 0.0) ? -1.0 : 1.0;
  const double S = std::abs(s_end);
  const bool fixed = policy.kind == StepPolicy::Kind::Fixed;

  double s = 0.0;
  Array y = T::to(state0);
  Array k1 = T::to(rhs(state0));
  tr.rows.push_back({0.0, state0, T::from(k1)});

  auto attempt = [&](const Array& yy, const Array& kk, double h)
      -> std::optional<StepResult<State, Rhs>> {
    if (fixed) return rk4_step<State>(rhs, yy, kk, dir * h);
    return dopri_step<State>(rhs, yy, kk, dir * h, policy.rel_tol,
                             policy.abs_tol);
  };

  double h_next = fixed ? policy.step : std::min(policy.max_step, 1e-3);
  const double s_eps = 1e-14 * std::max(1.0, S);

  while (S - s > s_eps) {
    const double h = std::min(h_next, S - s);
    if (!fixed && h < 1e-14 * std::max(1.0, s)) {
      throw std::runtime_error("adaptive step underflow");
    }
    auto res = attempt(y, k1, h);
    if (!res) {
      // Domain breach inside this step: bisect for the largest valid
      // advance, take it, and stop at the boundary.
      double lo = 0.0, hi = h;
      std::optional<StepResult<State, Rhs>> best;
      while (hi - lo > 1e-13) {
        const double mid = 0.5 * (lo + hi);
        auto probe = attempt(y, k1, mid);
        if (probe) {
          lo = mid;
          best = probe;
        } else {
          hi = mid;
        }
      }
      if (best && lo > 1e-12) {
        s += lo;
        y = best->y_new;
        const State st = T::from(y);
        tr.rows.push_back({dir * s, st, rhs(st)});
      }
      tr.breached = true;
      tr.breach_s = dir * s;
      break;
    }
    if (!fixed && res->err_norm > 1.0) {
      const double fac =
          std::clamp(0.9 * std::pow(res->err_norm, -0.2), 0.2, 5.0);
      h_next = std::max(h * fac, h * 0.2);
      continue;
    }
    s += h;
    y = res->y_new;
    const State st = T::from(y);
    k1 = T::to(rhs(st));
    tr.rows.push_back({dir * s, st, T::from(k1)});
    if (!fixed) {
      const double fac = (res->err_norm <= 1e-30)
                             ? 5.0
                             : std::clamp(0.9 * std::pow(res->err_norm, -0.2),
                                          0.2, 5.0);
      h_next = std::min(h * fac, policy.max_step);
    }
  }

  tr.wall_time_sec =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start)
          .count();
  return tr;
}

template <class State>
Trace<State> resample_impl(const Trace<State>& trace,
                           const std::vector<double>& s_values) {
  using T = SysTraits<State>;
  if (trace.rows.empty()) {
    throw std::invalid_argument("cannot resample an empty trace");
  }
  const double s_lo = std::min(trace.s_front(), trace.s_back());
  const double s_hi = std::max(trace.s_front(), trace.s_back());
  const bool forward = trace.s_back() >= trace.s_front();

  Trace<State> out;
  out.integrator = trace.integrator;
  out.policy = trace.policy;
  out.breached = trace.breached;
  out.breach_s = trace.breach_s;
  out.rows.reserve(s_values.size());

  for (const double s : s_values) {
    if (!(s >= s_lo && s <= s_hi)) {
      throw std::invalid_argument("resample parameter outside trace range");
    }
    // Bracketing index in storage order; rows are monotone either way.
    const auto cmp_forward = [](const TraceRow<State>& row, double v) {
      return row.s < v;
    };
    const auto cmp_reverse = [](const TraceRow<State>& row, double v) {
      return row.s > v;
    };
    auto it = forward
                  ? std::lower_bound(trace.rows.begin(), trace.rows.end(), s,
                                     cmp_forward)
                  : std::lower_bound(trace.rows.begin(), trace.rows.end(), s,
                                     cmp_reverse);
    if (it != trace.rows.end() && it->s == s) {
      out.rows.push_back(*it);
      continue;
    }
    const auto& hi_row = *it;
    const auto& lo_row = *(it - 1);
    const double h = hi_row.s - lo_row.s;
    const double u = (s - lo_row.s) / h;
    const double h00 = (1.0 + 2.0 * u) * (1.0 - u) * (1.0 - u);
    const double h10 = u * (1.0 - u) * (1.0 - u);
    const double h01 = u * u * (3.0 - 2.0 * u);
    const double h11 = u * u * (u - 1.0);
    const double d00 = (6.0 * u * u - 6.0 * u) / h;
    const double d10 = 3.0 * u * u - 4.0 * u + 1.0;
    const double d01 = (-6.0 * u * u + 6.0 * u) / h;
    const double d11 = 3.0 * u * u - 2.0 * u;
    const auto ya = T::to(lo_row.state);
    const auto yb = T::to(hi_row.state);
    const auto da = T::to(lo_row.deriv);
    const auto db = T::to(hi_row.deriv);
    typename T::Array yv, dv;
    for (std::size_t i = 0; i < T::n; ++i) {
      yv[i] = h00 * ya[i] + h10 * h * da[i] + h01 * yb[i] + h11 * h * db[i];
      dv[i] = d00 * ya[i] + d10 * da[i] + d01 * yb[i] + d11 * db[i];
    }
    out.rows.push_back({s, T::from(yv), T::from(dv)});
  }
  return out;
}

}  // namespace

HeisState make_state(const HeisPoint& p, const FrameVecH& v) {
  return {p.x, p.y, p.t, v.f, v.g, v.h};
}

ConeState make_state(const ConePoint& q, const FrameVecC& v) {
  return {q.x, q.y, q.t, q.r, v.f, v.g, v.h, v.k};
}

HeisPoint point_of(const HeisState& s) { return {s.x, s.y, s.t}; }
ConePoint point_of(const ConeState& s) { return {s.x, s.y, s.t, s.r}; }
FrameVecH velocity_of(const HeisState& s) { return {s.f, s.g, s.h}; }
FrameVecC velocity_of(const ConeState& s) { return {s.f, s.g, s.h, s.k}; }

double speed(const HeisState& s) {
  return std::sqrt(s.f * s.f + s.g * s.g + s.h * s.h);
}

double speed(const ConeState& s) {
  return std::sqrt(s.f * s.f + s.g * s.g + s.h * s.h + s.k * s.k);
}

HeisState heis_rhs(const HeisState& s) {
  return {s.f, s.g, 2.0 * s.h - 2.0 * s.x * s.g + 2.0 * s.y * s.f,
          2.0 * s.g * s.h, -2.0 * s.f * s.h, 0.0};
}

ConeState cone_rhs(const ConeState& s) {
  if (!(s.r > kIntegrateRadiusMin)) {
    throw std::domain_error("cone state below the radius floor");
  }
  const double inv_r = 1.0 / s.r;
  return {s.f * inv_r,
          s.g * inv_r,
          (2.0 * s.h - 2.0 * s.x * s.g + 2.0 * s.y * s.f) * inv_r,
          s.k,
          (2.0 * s.g * s.h - s.k * s.f) * inv_r,
          (-2.0 * s.f * s.h - s.k * s.g) * inv_r,
          -s.k * s.h * inv_r,
          (1.0 - s.k * s.k) * inv_r};
}

StepPolicy StepPolicy::fixed(double step) {
  StepPolicy p;
  p.kind = Kind::Fixed;
  p.step = step;
  p.validate();
  return p;
}

StepPolicy StepPolicy::adaptive(double rel_tol, double abs_tol,
                                double max_step) {
  StepPolicy p;
  p.kind = Kind::Adaptive;
  p.rel_tol = rel_tol;
  p.abs_tol = abs_tol;
  p.max_step = max_step;
  p.validate();
  return p;
}

void StepPolicy::validate() const {
  if (kind == Kind::Fixed) {
    if (!(step > 0.0)) throw std::invalid_argument("step must be positive");
  } else {
    if (!(rel_tol > 0.0) || !(abs_tol > 0.0) || !(max_step > 0.0)) {
      throw std::invalid_argument("adaptive tolerances must be positive");
    }
  }
}

HeisTrace integrate(HeisRhs rhs, const HeisState& state0, double s_end,
                    const StepPolicy& policy) {
  return run(rhs, state0, s_end, policy);
}

ConeTrace integrate(ConeRhs rhs, const ConeState& state0, double s_end,
                    const StepPolicy& policy) {
  return run(rhs, state0, s_end, policy);
}

HeisTrace resample(const HeisTrace& trace, const std::vector<double>& s_values) {
  return resample_impl(trace, s_values);
}

ConeTrace resample(const ConeTrace& trace, const std::vector<double>& s_values) {
  return resample_impl(trace, s_values);
}

}  // namespace heiscone
