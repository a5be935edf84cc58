#include <benchmark/benchmark.h>

#include "gdd/distribution.hpp"
#include "gdd/moments.hpp"
#include "gdd/sampler.hpp"
#include "gdd/specfun.hpp"
#include "gdd/stein.hpp"
#include "gdd/variance_gamma.hpp"

namespace {

const gdd::GddParams kParams(2, 1.5, 0.7, 2.2);

void BM_Pdf(benchmark::State& state) {
    const auto route = static_cast<gdd::DensityRoute>(state.range(0));
    state.SetLabel(std::string(gdd::to_string(route)));
    double x = -3.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(gdd::pdf(kParams, x, route));
        x = x > 3.0 ? -3.0 : x + 0.37;
    }
}
BENCHMARK(BM_Pdf)
    ->Arg(static_cast<int>(gdd::DensityRoute::tricomi))
    ->Arg(static_cast<int>(gdd::DensityRoute::convolution))
    ->Arg(static_cast<int>(gdd::DensityRoute::fourier));

void BM_PdfPolynomial(benchmark::State& state) {
    const gdd::GddParams p(3, 1.3, 0.8, 0.6);
    for (auto _ : state) {
        benchmark::DoNotOptimize(gdd::pdf(p, 1.7, gdd::DensityRoute::polynomial));
    }
}
BENCHMARK(BM_PdfPolynomial);

void BM_Cdf(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(gdd::cdf(kParams, 0.4));
    }
}
BENCHMARK(BM_Cdf);

void BM_TricomiU(benchmark::State& state) {
    const double z = static_cast<double>(state.range(0)) / 10.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(gdd::specfun::tricomi_u(0.3, -0.4, z));
    }
}
BENCHMARK(BM_TricomiU)->Arg(1)->Arg(17)->Arg(150)->Arg(800);

void BM_TricomiUNearIntegerB(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(gdd::specfun::tricomi_u(0.6, 1.0, 2.0));
    }
}
BENCHMARK(BM_TricomiUNearIntegerB);

void BM_BesselK(benchmark::State& state) {
    const double nu = static_cast<double>(state.range(0)) / 10.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(gdd::specfun::bessel_k(nu, 1.3));
    }
}
BENCHMARK(BM_BesselK)->Arg(5)->Arg(3)->Arg(23);

void BM_Gauss2F1(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(gdd::specfun::gauss_2f1(1.3, 0.7, 2.1, 0.6));
    }
}
BENCHMARK(BM_Gauss2F1);

void BM_MomentsRecurrence(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(gdd::moments_recurrence(kParams, 10));
    }
}
BENCHMARK(BM_MomentsRecurrence);

void BM_MomentClosedForm(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(gdd::moment_closed_form(kParams, 10, gdd::ClosedForm::first));
    }
}
BENCHMARK(BM_MomentClosedForm);

void BM_AbsMoment(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(gdd::abs_moment(kParams, 1.37));
    }
}
BENCHMARK(BM_AbsMoment);

void BM_SteinExpectation(benchmark::State& state) {
    const auto tf = gdd::named_test_function("gauss");
    for (auto _ : state) {
        benchmark::DoNotOptimize(gdd::stein_expectation(kParams, tf));
    }
}
BENCHMARK(BM_SteinExpectation)->Unit(benchmark::kMillisecond);

void BM_VgPdf(benchmark::State& state) {
    const gdd::VgParams v(3, 0.5, 2);
    for (auto _ : state) {
        benchmark::DoNotOptimize(gdd::vg_pdf(v, 1.0));
    }
}
BENCHMARK(BM_VgPdf);

void BM_SampleGdd(benchmark::State& state) {
    gdd::SamplerState s(42);
    const auto n = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(gdd::sample_gdd(s, kParams, n));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SampleGdd)->Arg(1 << 16);

void BM_SampleVg(benchmark::State& state) {
    gdd::SamplerState s(42);
    const gdd::VgParams v(3, 0.5, 2);
    const auto route = static_cast<gdd::VgSamplingRoute>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(gdd::sample_vg(s, v, 1 << 16, route));
    }
    state.SetItemsProcessed(state.iterations() * (1 << 16));
}
BENCHMARK(BM_SampleVg)
    ->Arg(static_cast<int>(gdd::VgSamplingRoute::normal_mixture))
    ->Arg(static_cast<int>(gdd::VgSamplingRoute::gamma_difference));

}  // namespace
BENCHMARK_MAIN();
