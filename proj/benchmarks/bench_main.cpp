#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "ionnoise/budget.hpp"
#include "ionnoise/config.hpp"
#include "ionnoise/constants.hpp"
#include "ionnoise/diffusion.hpp"
#include "ionnoise/kelvin.hpp"
#include "ionnoise/modes.hpp"
#include "ionnoise/patch.hpp"
#include "ionnoise/thermometry.hpp"
#include "ionnoise/trap.hpp"

using namespace ionnoise;

static void BM_mode_function(benchmark::State& state) {
    const DriveParameters drive{hz_to_rad(20e6), 0.0, 0.2};
    for (auto _ : state) benchmark::DoNotOptimize(mode_function(drive, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_mode_function)->Arg(3)->Arg(6)->Arg(12);

static void BM_floquet_heating(benchmark::State& state) {
    const auto ion = calcium40();
    const auto m = mode_function(DriveParameters{hz_to_rad(20e6), 0.0, 0.3}, 8);
    const Spectrum s = [](double w) { return 1e-14 * hz_to_rad(1e6) / w; };
    for (auto _ : state) benchmark::DoNotOptimize(heating_rate(ion, m, s, m.j_max));
}
BENCHMARK(BM_floquet_heating);

static void BM_normal_modes(benchmark::State& state) {
    const auto ion = calcium40();
    const double w_ax = hz_to_rad(1e6);
    const auto n = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(normal_modes(chain_equilibrium(n, w_ax, ion), ion, w_ax, 20.0 * w_ax));
}
BENCHMARK(BM_normal_modes)->Arg(2)->Arg(10)->Arg(30);

static void BM_kelvin(benchmark::State& state) {
    double x = 0.1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(kelvin_k0(x));
        x = x > 30.0 ? 0.1 : x * 1.07;
    }
}
BENCHMARK(BM_kelvin);

static void BM_patch_two_plates(benchmark::State& state) {
    const double d = 100e-6, rc = d;
    const PatchModel m{1e-12, effective_patch_area(PatchCorrelation::exponential, rc), 1.0, PatchCorrelation::exponential, rc};
    for (auto _ : state) benchmark::DoNotOptimize(patch_spectrum_two_plates(m, d, FieldAxis::perpendicular));
}
BENCHMARK(BM_patch_two_plates);

static void BM_diffusion_kernel_plane(benchmark::State& state) {
    const double w = std::pow(10.0, static_cast<double>(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(diffusion_kernel_numeric(w, INFINITY, FieldAxis::perpendicular));
}
BENCHMARK(BM_diffusion_kernel_plane)->Arg(-3)->Arg(0)->Arg(2)->Unit(benchmark::kMillisecond);

static void BM_heating_measurement(benchmark::State& state) {
    HeatingMeasurementConfig c;
    c.gamma_h = 10.0;
    c.wait_times = {0.0, 10e-3, 20e-3, 50e-3};
    c.shots = 500;
    std::uint64_t seed = 0;
    for (auto _ : state) {
        c.seed = ++seed;
        benchmark::DoNotOptimize(simulate_heating_measurement(c));
    }
}
BENCHMARK(BM_heating_measurement);

static void BM_reference_budget(benchmark::State& state) {
    const auto config = load_config(IONNOISE_REFERENCE_CONFIG);
    for (auto _ : state) benchmark::DoNotOptimize(noise_budget(config));
}
BENCHMARK(BM_reference_budget)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
