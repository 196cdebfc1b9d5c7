#include <benchmark/benchmark.h>

#include "qsearch/analog.hpp"
#include "qsearch/digital.hpp"
#include "qsearch/fixed_point.hpp"
#include "qsearch/ga.hpp"
#include "qsearch/infogeom.hpp"
#include "qsearch/msta.hpp"
#include "qsearch/random.hpp"

using namespace qsearch;

static void BM_GeometricProductCl3(benchmark::State& st) {
    const auto sig = ga::Signature::euclidean(3);
    std::vector<double> a(8), b(8);
    for (int i = 0; i < 8; ++i) a[i] = 0.1 * i + 1, b[i] = 1 - 0.05 * i;
    const ga::Multivector x(sig, a), y(sig, b);
    for (auto _ : st) benchmark::DoNotOptimize(x * y);
}
BENCHMARK(BM_GeometricProductCl3);

static void BM_GeometricProductSpacetime(benchmark::State& st) {
    const auto sig = ga::Signature::spacetime();
    std::vector<double> a(16), b(16);
    for (int i = 0; i < 16; ++i) a[i] = 0.1 * i + 1, b[i] = 1 - 0.05 * i;
    const ga::Multivector x(sig, a), y(sig, b);
    for (auto _ : st) benchmark::DoNotOptimize(x * y);
}
BENCHMARK(BM_GeometricProductSpacetime);

static void BM_GroverIterate(benchmark::State& st) {
    const std::size_t N = st.range(0);
    digital::StateVector s = digital::init_uniform(N);
    for (auto _ : st) {
        digital::oracle_inplace(s, N / 2);
        digital::inversion_inplace(s);
        benchmark::ClobberMemory();
    }
    st.SetItemsProcessed(st.iterations() * N);
}
BENCHMARK(BM_GroverIterate)->Range(1 << 10, 1 << 20);

static void BM_GaGroverApply(benchmark::State& st) {
    for (auto _ : st) benchmark::DoNotOptimize(msta::ga_grover_apply(785, 1e6));
}
BENCHMARK(BM_GaGroverApply);

static void BM_FixedPointRun(benchmark::State& st) {
    Rng rng(1);
    const CMatrix U = haar_unitary(st.range(0), rng);
    for (auto _ : st) benchmark::DoNotOptimize(fixedpoint::fixed_point_run(U, 0, 3));
}
BENCHMARK(BM_FixedPointRun)->Arg(4)->Arg(16)->Arg(64);

static void BM_FarhiGutmannPeak(benchmark::State& st) {
    for (auto _ : st) benchmark::DoNotOptimize(analog::fg_first_peak(double(st.range(0)), 1.0));
}
BENCHMARK(BM_FarhiGutmannPeak)->Arg(16)->Arg(4096);

static void BM_FisherGrover(benchmark::State& st) {
    const auto f = infogeom::grover_family(st.range(0));
    for (auto _ : st) benchmark::DoNotOptimize(infogeom::fisher_information(f, 0.7));
}
BENCHMARK(BM_FisherGrover)->Arg(64)->Arg(4096);

static void BM_DampedSolve(benchmark::State& st) {
    for (auto _ : st) benchmark::DoNotOptimize(fixedpoint::damped_geodesic_solve(2, 1, 0.5, -0.2, 10));
}
BENCHMARK(BM_DampedSolve);
BENCHMARK_MAIN();
