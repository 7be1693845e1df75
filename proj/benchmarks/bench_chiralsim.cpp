#include <benchmark/benchmark.h>

#include "chiralsim/calibration.hpp"
#include "chiralsim/config.hpp"
#include "chiralsim/sweep.hpp"

using namespace chiralsim;

namespace {

ModeSystem two_mode_system() {
    RunConfig cfg = parse_config(R"({"preset":"R","d":0.912})");
    return to_mode_system(cfg);
}

ModeSystem three_mode_system() {
    RunConfig cfg = parse_config(R"({"preset":"R","d":0.912,"third_enabled":true})");
    return to_mode_system(cfg);
}

void BM_AngularFactor(benchmark::State& state) {
    double phi = 0.0;
    for (auto _ : state) {
        phi += 1e-3;
        benchmark::DoNotOptimize(angular_factor(phi));
    }
}
BENCHMARK(BM_AngularFactor);

void BM_S21TwoMode(benchmark::State& state) {
    ModeSystem sys = two_mode_system();
    DriveSpec drive;
    double f = 8.0;
    for (auto _ : state) {
        f = (f > 10.0) ? 8.0 : f + 1e-4;
        benchmark::DoNotOptimize(s21(sys, drive, f));
    }
}
BENCHMARK(BM_S21TwoMode);

void BM_S21ThreeMode(benchmark::State& state) {
    ModeSystem sys = three_mode_system();
    DriveSpec drive;
    double f = 5.0;
    for (auto _ : state) {
        f = (f > 10.0) ? 5.0 : f + 1e-4;
        benchmark::DoNotOptimize(s21(sys, drive, f));
    }
}
BENCHMARK(BM_S21ThreeMode);

void BM_Eigenvalues3x3(benchmark::State& state) {
    ModeSystem sys = three_mode_system();
    CouplingMatrix m = coupling_matrix(sys);
    for (auto _ : state) {
        benchmark::DoNotOptimize(eigenfrequencies(m));
    }
}
BENCHMARK(BM_Eigenvalues3x3);

void BM_SpectrumRow(benchmark::State& state) {
    ModeSystem sys = three_mode_system();
    DriveSpec drive;
    for (auto _ : state) {
        benchmark::DoNotOptimize(spectrum(sys, drive, 5.0, 10.0, 2001));
    }
    state.SetItemsProcessed(state.iterations() * 2001);
}
BENCHMARK(BM_SpectrumRow);

void BM_GridSweep(benchmark::State& state) {
    ModeSystem sys = three_mode_system();
    DriveSpec drive;
    AxisSpec freq{5.0, 10.0, 2001};
    AxisSpec dist{0.0, 10.0, 100};
    for (auto _ : state) {
        benchmark::DoNotOptimize(grid_sweep(sys, drive, freq, dist, {1, false}));
    }
    state.SetItemsProcessed(state.iterations() * 2001 * 100);
}
BENCHMARK(BM_GridSweep)->Unit(benchmark::kMillisecond);

void BM_FindPeaks(benchmark::State& state) {
    ModeSystem sys = two_mode_system();
    sys.mode_b.line_coupling = 0.02;
    SpectrumGrid grid = grid_sweep(sys, {}, {8.0, 10.0, 2001}, AxisSpec{0.0, 10.0, 100});
    for (auto _ : state) {
        benchmark::DoNotOptimize(find_peaks(grid, 8.0, 10.0, 1.0));
    }
}
BENCHMARK(BM_FindPeaks)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
