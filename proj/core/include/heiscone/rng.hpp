/// Deterministic random sampling for validation suites. A fixed seed must
/// reproduce the same draw sequence on every platform, so the helpers map
/// raw mt19937_64 output to doubles directly instead of going through
/// std::uniform_real_distribution (whose algorithm is unspecified).

#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace heiscone {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on [0, 1) with 53-bit resolution.
  double uniform01() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) {
    return lo + (hi - lo) * uniform01();
  }

  /// Standard normal via Box-Muller (one value per call, no cached state, so
  /// the stream position depends only on the number of calls).
  double normal() {
    double u1 = uniform01();
    while (u1 == 0.0) u1 = uniform01();
    const double u2 = uniform01();
    const double two_pi = 6.283185307179586476925286766559;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(two_pi * u2);
  }

  std::uint64_t raw() { return engine_(); }

  /// Decorrelated seed for a sub-suite, stable across runs.
  static std::uint64_t derive(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace heiscone
