#include "fuchsdim/boundary_metric.hpp"
#include "fuchsdim/dimension.hpp"
#include "fuchsdim/schottky.hpp"
#include "fuchsdim/words.hpp"

#include <benchmark/benchmark.h>

using namespace fuchsdim;

namespace {

void BM_Apply(benchmark::State& state) {
    const Precision prec{state.range(0)};
    const MoebiusMap h = build_generator(5, prec);
    UHPoint z{BigReal(0.3, prec), BigReal(1.7, prec)};
    for (auto _ : state) {
        benchmark::DoNotOptimize(apply(h, z));
    }
}
BENCHMARK(BM_Apply)->Arg(128)->Arg(512)->Arg(2048);

void BM_CoveringSums(benchmark::State& state) {
    const GeneratorFamily f(2, 6, Precision{512});
    const BigReal alpha = BigReal(1L, f.precision()) / 4L;
    for (auto _ : state) {
        benchmark::DoNotOptimize(covering_sums(f, state.range(0), alpha));
    }
    state.SetItemsProcessed(state.iterations() * static_cast<long>(reduced_word_count(2, 6, state.range(0))));
}
BENCHMARK(BM_CoveringSums)->DenseRange(2, 4)->Unit(benchmark::kMillisecond);

void BM_ShadowInterval(benchmark::State& state) {
    const Precision prec{512};
    const UHPoint o{BigReal(0L, prec), BigReal(1L, prec)};
    const UHPoint z = geodesic_ray_point(o, BoundaryPoint::finite(BigReal(0.4, prec)),
                                         BigReal(static_cast<long>(state.range(0)), prec));
    const BigReal R(1L, prec);
    for (auto _ : state) {
        benchmark::DoNotOptimize(shadow_interval(z, R));
    }
}
BENCHMARK(BM_ShadowInterval)->Arg(5)->Arg(20)->Arg(40)->Unit(benchmark::kMicrosecond);

void BM_OrbitDistance(benchmark::State& state) {
    const GeneratorFamily f(2, 6, Precision{512});
    const UHPoint z = orbit_point({3, -2, 4}, f);
    for (auto _ : state) {
        benchmark::DoNotOptimize(orbit_distance(z, f, 100000));
    }
}
BENCHMARK(BM_OrbitDistance)->Unit(benchmark::kMicrosecond);

} // namespace

BENCHMARK_MAIN();
