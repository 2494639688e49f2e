#include <benchmark/benchmark.h>

#include <numbers>

#include "pxp/constrained_hilbert.hpp"
#include "pxp/diagnostics.hpp"
#include "pxp/floquet_engine.hpp"
#include "pxp/linalg.hpp"
#include "pxp/observables.hpp"
#include "pxp/spin_operators.hpp"
#include "pxp/states.hpp"

using namespace pxp;

namespace {

constexpr double kW = std::numbers::sqrt2;

Space space_for(int L, bool sector) {
  ConstrainedBasis b({L, Boundary::periodic});
  return sector ? Space::sector(SectorBasis(b, {0, 1})) : Space::full(b);
}

void BM_EnumerateBasis(benchmark::State& state) {
  const int L = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_basis({L, Boundary::periodic}).size());
}
BENCHMARK(BM_EnumerateBasis)->DenseRange(12, 24, 4)->Unit(benchmark::kMillisecond);

void BM_SectorBasis(benchmark::State& state) {
  const ConstrainedBasis b({static_cast<int>(state.range(0)), Boundary::periodic});
  for (auto _ : state) benchmark::DoNotOptimize(SectorBasis(b, {0, 1}).dim());
}
BENCHMARK(BM_SectorBasis)->DenseRange(16, 24, 4)->Unit(benchmark::kMillisecond);

void BM_Eigh(benchmark::State& state) {
  const Space sp = space_for(static_cast<int>(state.range(0)), false);
  const MatC h = build_h_spin(sp, kW, 7.5);
  state.counters["dim"] = static_cast<double>(sp.dim());
  for (auto _ : state) benchmark::DoNotOptimize(eigh(h).values.size());
}
BENCHMARK(BM_Eigh)->Arg(10)->Arg(12)->Arg(14)->Unit(benchmark::kMillisecond);

void BM_BuildFloquetOperator(benchmark::State& state) {
  const Space sp = space_for(static_cast<int>(state.range(0)), false);
  const DriveProtocol p{kW, 15.0, 15.0};
  state.counters["dim"] = static_cast<double>(sp.dim());
  for (auto _ : state) benchmark::DoNotOptimize(build_floquet_operator(sp, p).U.size());
}
BENCHMARK(BM_BuildFloquetOperator)->Arg(10)->Arg(12)->Arg(14)->Unit(benchmark::kMillisecond);

void BM_UnitaryEig(benchmark::State& state) {
  const Space sp = space_for(static_cast<int>(state.range(0)), false);
  const MatC u = build_floquet_operator(sp, {kW, 15.0, 8.25}).U;
  const auto method = state.range(1) ? UnitaryMethod::hermitian_pencil : UnitaryMethod::schur;
  state.SetLabel(to_string(method));
  for (auto _ : state) benchmark::DoNotOptimize(unitary_eig(u, method).phases.size());
}
BENCHMARK(BM_UnitaryEig)->ArgsProduct({{10, 12, 14}, {0, 1}})->Unit(benchmark::kMillisecond);

void BM_StroboscopicSeries(benchmark::State& state) {
  const ConstrainedBasis b({14, Boundary::periodic});
  const Space sp = Space::full(b);
  const MatC u = build_floquet_operator(sp, {kW, 15.0, 15.0}).U;
  const MatC obs = build_correlator(sp, 2, 2);
  const VecC psi0 = full_state_vector(b, {InitialState::Kind::z2, 0});
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(correlator_series(psi0, u, obs, n).values.size());
}
BENCHMARK(BM_StroboscopicSeries)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond);

void BM_LevelStatisticsSector(benchmark::State& state) {
  const Space sp = space_for(static_cast<int>(state.range(0)), true);
  const DriveProtocol p{kW, 15.0, 7.8};
  state.counters["dim"] = static_cast<double>(sp.dim());
  for (auto _ : state)
    benchmark::DoNotOptimize(level_statistics(floquet_quasienergies(build_floquet_operator(sp, p)), p.omega, 1e-8 * p.omega).mean_r);
}
BENCHMARK(BM_LevelStatisticsSector)->Arg(16)->Arg(18)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
