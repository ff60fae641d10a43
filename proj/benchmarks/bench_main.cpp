#include <benchmark/benchmark.h>

#include "qlzsm/propagate.hpp"
#include "qlzsm/spectra.hpp"
#include "qlzsm/sweep.hpp"

using namespace qlzsm;
using namespace qlzsm::units;

namespace {

void BM_HamiltonianEval(benchmark::State& state) {
  SystemSpec s;
  s.n_levels = static_cast<int>(state.range(0));
  DriveSpec d;
  LevelMatrix h(s.n_levels, s.n_levels);
  double t = -0.2;
  for (auto _ : state) {
    detail::hamiltonian_raw(t, d, s, h);
    benchmark::DoNotOptimize(h);
    t = t < 0.2 ? t + 1e-6 : -0.2;
  }
}
BENCHMARK(BM_HamiltonianEval)->Arg(3)->Arg(4);

void BM_SchrodingerTrajectory(benchmark::State& state) {
  SystemSpec s;
  DriveSpec d;
  const double tol = std::pow(10.0, -static_cast<double>(state.range(0)));
  for (auto _ : state) {
    auto traj = evolve_schrodinger(s, d, PureState::basis_state(4, 0),
                                   EvolveOptions{401, tol, false});
    benchmark::DoNotOptimize(traj);
  }
}
BENCHMARK(BM_SchrodingerTrajectory)->Arg(8)->Arg(10)->Unit(benchmark::kMillisecond);

void BM_LindbladTrajectory(benchmark::State& state) {
  SystemSpec s;
  DriveSpec d;
  for (auto _ : state) {
    auto traj = evolve_lindblad(s, d, DensityMatrix::ground(4),
                                EvolveOptions{401, 1e-10, false});
    benchmark::DoNotOptimize(traj);
  }
}
BENCHMARK(BM_LindbladTrajectory)->Unit(benchmark::kMillisecond);

void BM_SweepCellThroughput(benchmark::State& state) {
  SweepGrid g;
  g.amplitudes = SweepGrid::linspace(mhz_to_angular(40.0),
                                     mhz_to_angular(60.0), 5);
  g.offsets = SweepGrid::linspace(-mhz_to_angular(0.5), mhz_to_angular(0.5),
                                  3);
  for (auto _ : state) {
    auto result = run_sweep(g, 1e-8, 1);
    benchmark::DoNotOptimize(result);
  }
  state.counters["cells_per_s"] = benchmark::Counter(
      15.0 * static_cast<double>(state.iterations()),
      benchmark::Counter::kIsRate);
}
BENCHMARK(BM_SweepCellThroughput)->Unit(benchmark::kMillisecond);

void BM_InstantaneousSpectrum(benchmark::State& state) {
  SystemSpec s;
  s.n_levels = 3;
  DriveSpec d;
  for (auto _ : state) {
    auto spectrum = instantaneous_spectrum(s, d, 401);
    benchmark::DoNotOptimize(spectrum);
  }
}
BENCHMARK(BM_InstantaneousSpectrum)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
