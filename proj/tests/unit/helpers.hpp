// Shared sampling helpers for the unit tests. Every sampler takes an
// explicit engine so each test owns its seed and stays deterministic.

#pragma once

#include <cmath>
#include <random>

#include "heiscone/cone.hpp"
#include "heiscone/heis.hpp"

namespace heiscone::testutil {

using Engine = std::mt19937_64;

inline double uniform(Engine& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline HeisPoint random_heis_point(Engine& rng, double range = 3.0) {
  return {uniform(rng, -range, range), uniform(rng, -range, range),
          uniform(rng, -range, range)};
}

inline ConePoint random_cone_point(Engine& rng, double range = 2.0) {
  return {uniform(rng, -range, range), uniform(rng, -range, range),
          uniform(rng, -range, range), uniform(rng, 0.3, 3.0)};
}

// mode 0: Line (h = 0), 1: Vertical (|h| = 1), 2: Helix (0 < |h| < 1).
inline FrameVecH random_heis_dir(Engine& rng, int mode) {
  if (mode == 1) return {0.0, 0.0, uniform(rng, 0.0, 1.0) < 0.5 ? -1.0 : 1.0};
  const double ang = uniform(rng, 0.0, 2.0 * M_PI);
  if (mode == 0) return {std::cos(ang), std::sin(ang), 0.0};
  const double c = (uniform(rng, 0.0, 1.0) < 0.5 ? -1.0 : 1.0) *
                   uniform(rng, 0.05, 0.95);
  const double rho = std::sqrt(1.0 - c * c);
  return {rho * std::cos(ang), rho * std::sin(ang), c};
}

// mode 0: RadialLine, 1: Arc, 2: General, 3: HorizontalLimit.
inline FrameVecC random_cone_dir(Engine& rng, int mode) {
  if (mode == 0) return {0.0, 0.0, 0.0, uniform(rng, 0.0, 1.0) < 0.5 ? -1.0 : 1.0};
  const double k = uniform(rng, -0.9, 0.9);
  const double rho = std::sqrt(1.0 - k * k);
  if (mode == 1) {
    return {0.0, 0.0, uniform(rng, 0.0, 1.0) < 0.5 ? -rho : rho, k};
  }
  const double ang = uniform(rng, 0.0, 2.0 * M_PI);
  if (mode == 3) return {rho * std::cos(ang), rho * std::sin(ang), 0.0, k};
  const double share = uniform(rng, 0.15, 0.85);  // |h| fraction of rho
  const double h = (uniform(rng, 0.0, 1.0) < 0.5 ? -1.0 : 1.0) * rho * share;
  const double plane = std::sqrt(rho * rho - h * h);
  return {plane * std::cos(ang), plane * std::sin(ang), h, k};
}

}  // namespace heiscone::testutil
