#include "selmer/bklpr.hpp"
#include "selmer/eigendist.hpp"
#include "selmer/hurwitz.hpp"
#include "selmer/topology.hpp"

#include <benchmark/benchmark.h>

#include <random>

using namespace selmer;

static void BM_EnumerateOrthogonal(benchmark::State& st) {
    auto s = QuadSpace::split(static_cast<int>(st.range(0)), 3);
    for (auto _ : st) {
        size_t n = 0;
        for_each_orthogonal(s, [&](const OrthoElement&) { ++n; });
        benchmark::DoNotOptimize(n);
    }
}
BENCHMARK(BM_EnumerateOrthogonal)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

static void BM_SmithForm(benchmark::State& st) {
    const int n = static_cast<int>(st.range(0));
    std::mt19937_64 rng(1);
    ModMatrix m(n, n, 3 * 3 * 3 * 3 * 3 * 3);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m.set(i, j, static_cast<int64_t>(rng() % 729));
    for (auto _ : st) benchmark::DoNotOptimize(smith_valuations(m, 3, 6));
}
BENCHMARK(BM_SmithForm)->Arg(4)->Arg(8)->Arg(16);

static void BM_SignatureOfSample(benchmark::State& st) {
    auto s = QuadSpace::split(static_cast<int>(st.range(0)), 3);
    OrthoSampler smp(s, 1729);
    for (auto _ : st) benchmark::DoNotOptimize(coset_signature(s, smp.sample()));
}
BENCHMARK(BM_SignatureOfSample)->Arg(2)->Arg(4);

static void BM_IsotropicPair(benchmark::State& st) {
    auto sp = SplitSpace::make(static_cast<int>(st.range(0)), 3, 1);
    IsotropicSampler smp(sp, 1729);
    for (auto _ : st) benchmark::DoNotOptimize(intersection_module(smp.sample(), smp.sample()));
}
BENCHMARK(BM_IsotropicPair)->Arg(4)->Arg(8);

static void BM_AlternatingCokernel(benchmark::State& st) {
    std::mt19937_64 rng(1729);
    const int m = static_cast<int>(st.range(0));
    for (auto _ : st) benchmark::DoNotOptimize(alternating_cokernel_sample(m, 3, 17, 1, rng));
}
BENCHMARK(BM_AlternatingCokernel)->Arg(8)->Arg(12);

static void BM_TorsorCount(benchmark::State& st) {
    auto I = ModMatrix::identity(2, 3);
    TorsorSpec spec{Modulus(3), 1, 1, {I, I}, {I}, static_cast<int>(st.range(0))};
    for (auto _ : st) benchmark::DoNotOptimize(torsor_count(spec));
}
BENCHMARK(BM_TorsorCount)->Arg(2)->Arg(6);

static void BM_RingBuild(benchmark::State& st) {
    AffSymp G(Modulus(3), 1);
    auto rack = rack_from_class(G, G.branch_class());
    for (auto _ : st) benchmark::DoNotOptimize(GradedOrbitRing::build(rack, static_cast<int>(st.range(0))).basis_size(1));
}
BENCHMARK(BM_RingBuild)->Arg(4)->Arg(6)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
