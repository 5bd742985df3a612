// Microbenchmarks for the hot paths: closed-form evaluation (the shooting
// solver's inner loop), the integrators, and the batch validators.

#include <benchmark/benchmark.h>

#include <cmath>

#include "heiscone/analysis.hpp"
#include "heiscone/geodesics.hpp"
#include "heiscone/integrate.hpp"

namespace {

using namespace heiscone;

const double kSqrt3 = std::sqrt(3.0);

void BM_HeisHelixEval(benchmark::State& state) {
  const HeisGeodesic geo =
      heis_geodesic_from_ic({0, 0, 0}, {kSqrt3 / 2, 0, 0.5});
  double s = 0.0;
  for (auto _ : state) {
    s += 1e-6;
    benchmark::DoNotOptimize(heis_geodesic_eval(geo, s));
  }
}
BENCHMARK(BM_HeisHelixEval);

void BM_ConeGeneralEval(benchmark::State& state) {
  const ConeGeodesic geo =
      cone_geodesic_from_ic({0, 0, 0, 1}, {kSqrt3 / 2, 0, 0.5, 0});
  double s = 0.0;
  for (auto _ : state) {
    s += 1e-6;
    benchmark::DoNotOptimize(cone_geodesic_eval(geo, s));
  }
}
BENCHMARK(BM_ConeGeneralEval);

void BM_ConeFromIC(benchmark::State& state) {
  const ConePoint q0{0.3, -0.2, 0.7, 1.5};
  const FrameVecC v0 = normalized(FrameVecC{0.5, -0.4, 0.45, 0.3});
  for (auto _ : state) {
    benchmark::DoNotOptimize(cone_geodesic_from_ic(q0, v0));
  }
}
BENCHMARK(BM_ConeFromIC);

void BM_Rk4HelixSpanPi(benchmark::State& state) {
  const HeisState ic =
      make_state(HeisPoint{0, 0, 0}, FrameVecH{kSqrt3 / 2, 0, 0.5});
  const double pi = std::acos(-1.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        integrate(heis_rhs, ic, pi, StepPolicy::fixed(1e-3)));
  }
}
BENCHMARK(BM_Rk4HelixSpanPi);

void BM_Rk45ConeSpan1(benchmark::State& state) {
  const ConeState ic =
      make_state(ConePoint{0, 0, 0, 1}, FrameVecC{kSqrt3 / 2, 0, 0.5, 0});
  for (auto _ : state) {
    benchmark::DoNotOptimize(integrate(cone_rhs, ic, 1.0, StepPolicy::adaptive()));
  }
}
BENCHMARK(BM_Rk45ConeSpan1);

void BM_StructureValidate100(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(structure_validate(100, 42));
  }
}
BENCHMARK(BM_StructureValidate100);

void BM_ShootingGeneral(benchmark::State& state) {
  const ConeGeodesic geo =
      cone_geodesic_from_ic({0, 0, 0, 1}, {kSqrt3 / 2, 0, 0.5, 0});
  const ConePoint q = cone_geodesic_eval(geo, 1.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(connect_shooting({0, 0, 0, 1}, q));
  }
}
BENCHMARK(BM_ShootingGeneral);

void BM_FrameRoundTripCone(benchmark::State& state) {
  const ConePoint q{0.3, -0.2, 0.7, 1.5};
  const CoordVecC v{0.4, -1.1, 0.9, 0.2};
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        frame_compose_cone(q, frame_decompose_cone(q, v)));
  }
}
BENCHMARK(BM_FrameRoundTripCone);

}  // namespace

BENCHMARK_MAIN();
