// Per-point and per-run costs of the main pipelines.

#include <benchmark/benchmark.h>

#include "rcgeom/dynamics.hpp"
#include "rcgeom/field.hpp"
#include "rcgeom/fixtures.hpp"
#include "rcgeom/harness.hpp"
#include "rcgeom/snapshot.hpp"

namespace {

using namespace rcgeom;

SpacetimeModel const& rn() {
  static SpacetimeModel m = catalog_get("reissner-nordstrom");
  return m;
}

void BM_FieldHessian(benchmark::State& state) {
  auto const& m = rn();
  Point x{0.0, 4.0, 1.0, 0.5};
  for (auto _ : state) benchmark::DoNotOptimize(eval_with_derivatives(m.g(1, 1), x));
}
BENCHMARK(BM_FieldHessian);

void BM_Snapshot(benchmark::State& state) {
  auto const& m = rn();
  Point x{0.0, 4.0, 1.0, 0.5};
  auto mode = state.range(0) == 0 ? DiffMode::kDual : DiffMode::kFd;
  bool third = state.range(1) != 0;
  for (auto _ : state) benchmark::DoNotOptimize(make_snapshot(m, x, mode, third));
}
BENCHMARK(BM_Snapshot)->ArgsProduct({{0, 1}, {0, 1}})->ArgNames({"fd", "third"});

void BM_LorentzRhs(benchmark::State& state) {
  auto const& m = rn();
  WorldlineState s;
  s.x = {0.0, 6.0, 1.2, 0.3};
  s.V = normalize_velocity(m, s.x, {1.0, 0.1, 0.0, 0.02});
  for (auto _ : state) benchmark::DoNotOptimize(lorentz_rhs(m, s, 0.5));
}
BENCHMARK(BM_LorentzRhs);

void BM_CircularOrbitPeriod(benchmark::State& state) {
  auto m = catalog_get("schwarzschild");
  IntegratorConfig cfg;
  cfg.ds = 1e-2;
  cfg.steps = static_cast<long>(fixtures::circular_orbit_period(1.0, 8.0) / cfg.ds);
  cfg.save_every = 1000;
  for (auto _ : state) {
    benchmark::DoNotOptimize(integrate_worldline(m, fixtures::circular_orbit(1.0, 8.0), 0.0, cfg));
  }
}
BENCHMARK(BM_CircularOrbitPeriod)->Unit(benchmark::kMillisecond);

void BM_SuiteAll(benchmark::State& state) {
  SuiteSpec spec;
  spec.spacetime = "reissner-nordstrom";
  spec.jobs = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(run_suite(spec));
}
BENCHMARK(BM_SuiteAll)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();

}  // namespace
BENCHMARK_MAIN();
