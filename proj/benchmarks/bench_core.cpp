// Hot paths: composite diagonalization, linear response evaluation, and beam
// mode construction.

#include "nanoqed/composite.hpp"
#include "nanoqed/mechanics.hpp"
#include "nanoqed/spectroscopy.hpp"

#include <benchmark/benchmark.h>

#include <vector>

using namespace nanoqed;

namespace {

const CpbParams kCpb{1.3e9, 12.7e9, 0.2, 0.5};
const CouplingParams kLam{1.6e8};

std::vector<double> linspace(double a, double b, int n) {
    std::vector<double> v;
    v.reserve(n);
    for (int i = 0; i < n; ++i)
        v.push_back(a + (b - a) * i / (n - 1));
    return v;
}

void BM_CompositeDiagonalization(benchmark::State& state) {
    const int n_max = static_cast<int>(state.range(0));
    const int n_fock = static_cast<int>(state.range(1));
    const OscillatorParams osc{1.94e9, n_fock};
    for (auto _ : state) {
        const CompositeSpectrum cs =
            composite_spectrum(kCpb, osc, kLam, ChargeBasis{n_max});
        benchmark::DoNotOptimize(cs.eigenvalues.data());
    }
    state.SetLabel("dim=" + std::to_string((2 * n_max + 1) * (n_fock + 1)));
}
BENCHMARK(BM_CompositeDiagonalization)
    ->Args({5, 8})
    ->Args({7, 10})
    ->Args({9, 16})
    ->Unit(benchmark::kMillisecond);

void BM_LinearResponse(benchmark::State& state) {
    const OscillatorParams osc{1.94e9, 8};
    const CompositeSpectrum cs = composite_spectrum(kCpb, osc, kLam, ChargeBasis{5});
    ProbeConfig probe;
    probe.omega_grid = linspace(1.5e9, 2.4e9, static_cast<int>(state.range(0)));
    probe.eta = 5e6;
    probe.n_bar = 0.3;
    for (auto _ : state) {
        const ResponseTrace trace = linear_response_spectrum(cs, probe);
        benchmark::DoNotOptimize(trace.amplitude.data());
    }
}
BENCHMARK(BM_LinearResponse)->Arg(201)->Arg(1001)->Unit(benchmark::kMicrosecond);

void BM_BeamMode(benchmark::State& state) {
    BeamSpec b;
    b.width = 200e-9;
    b.thickness = 100e-9;
    b.length = 1.8e-6;
    b.electrode_length = 1.8e-6;
    b.gap = 70e-9;
    b.density = materials::aluminum.density;
    b.youngs_modulus = materials::aluminum.youngs_modulus;
    for (auto _ : state) {
        const ModeResult mode = beam_mode(b, 1);
        benchmark::DoNotOptimize(mode.alpha);
    }
}
BENCHMARK(BM_BeamMode)->Unit(benchmark::kMicrosecond);

void BM_SingleToneColumn(benchmark::State& state) {
    const OscillatorParams osc{1.94e9, 8, 0.0, OscillatorLabel::lc_cavity};
    ProbeConfig probe;
    probe.omega_grid = linspace(1.5e9, 2.4e9, 201);
    probe.eta = 5e6;
    probe.n_bar = 0.3;
    probe.qp_average = true;
    const std::vector<double> flux{0.42};
    for (auto _ : state) {
        const SpectroscopyMap map =
            single_tone_map(kCpb, osc, kLam, ChargeBasis{5}, flux, probe);
        benchmark::DoNotOptimize(map.amplitude.data());
    }
}
BENCHMARK(BM_SingleToneColumn)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
