// Serial reference vs OpenMP kernels. Worker count follows PULSESPEC_THREADS.
//
//   bench_kernels --benchmark_filter=Spectrum

#include <benchmark/benchmark.h>

#include "pulsespec/closed_form.hpp"
#include "pulsespec/correlators.hpp"
#include "pulsespec/lindblad.hpp"
#include "pulsespec/spectrum_numeric.hpp"

using namespace pulsespec;

namespace {

DriveParams params(int np) {
    DriveParams p;
    p.delta = 3.0;
    p.tau = 0.2;
    p.n_pulses = np;
    return p;
}

struct Setup {
    DriveParams p;
    TimeGrid g;
    std::vector<DensityMatrix> traj;
    CorrelatorGrid cg;
    FrequencyGrid fg;

    explicit Setup(int np)
        : p(params(np)),
          g(make_time_grid(p)),
          traj(propagate_trajectory(p, g)),
          cg(build_correlator_grids(p, g, traj, Execution::Serial)),
          fg(default_frequency_grid(p.tau)) {}
};

void BM_Correlators(benchmark::State& state, Execution exec) {
    const Setup s(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(build_correlator_grids(s.p, s.g, s.traj, exec));
    state.counters["samples"] = static_cast<double>(s.cg.total_samples());
}

void BM_SpectrumReference(benchmark::State& state) {
    const Setup s(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(compute_numeric_spectrum_reference(s.p, s.g, s.cg, s.fg));
}

void BM_Spectrum(benchmark::State& state, Execution exec) {
    const Setup s(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(compute_numeric_spectrum(s.p, s.g, s.cg, s.fg, exec));
}

void BM_ClosedForm(benchmark::State& state) {
    const auto p = params(static_cast<int>(state.range(0)));
    const auto fg = default_frequency_grid(p.tau);
    for (auto _ : state) benchmark::DoNotOptimize(closed_spectrum(p, fg));
}

}  // namespace

BENCHMARK_CAPTURE(BM_Correlators, serial, Execution::Serial)->Arg(8)->Arg(20)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Correlators, parallel, Execution::Parallel)->Arg(8)->Arg(20)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SpectrumReference)->Arg(8)->Arg(20)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Spectrum, serial, Execution::Serial)->Arg(8)->Arg(20)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Spectrum, parallel, Execution::Parallel)->Arg(8)->Arg(20)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ClosedForm)->Arg(8)->Arg(20)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
