#include <benchmark/benchmark.h>

#include <random>

#include <hdcat/eqrel.hpp>
#include <hdcat/generate.hpp>
#include <hdcat/hd.hpp>
#include <hdcat/multinerve.hpp>
#include <hdcat/smith.hpp>
#include <hdcat/space.hpp>

using namespace hdcat;

namespace {

// A tower of length n from a fixed seed with at most `bound` stored elements.
NFoldCat bench_tower(int n, std::size_t bound)
{
    return tower_nfold(random_tower(std::uint64_t{17} + n, TowerSpec{n, 4, bound}));
}

void BM_TowerObject(benchmark::State& state)
{
    const int n = static_cast<int>(state.range(0));
    SurjTower t = random_tower(std::uint64_t{5}, TowerSpec{n, 4, 5000});
    for (auto _ : state)
        benchmark::DoNotOptimize(tower_nfold(t));
}
BENCHMARK(BM_TowerObject)->DenseRange(1, 3);

void BM_CertifyHd(benchmark::State& state)
{
    NFoldCat x = bench_tower(static_cast<int>(state.range(0)), 5000);
    for (auto _ : state)
        benchmark::DoNotOptimize(is_hd(x));
}
BENCHMARK(BM_CertifyHd)->DenseRange(1, 3);

void BM_Discretize(benchmark::State& state)
{
    NFoldCat x = bench_tower(static_cast<int>(state.range(0)), 5000);
    HdCert cert = certify_hd(x);
    for (auto _ : state)
        benchmark::DoNotOptimize(discretize(x, cert));
}
BENCHMARK(BM_Discretize)->DenseRange(1, 3);

void BM_RoundTrip(benchmark::State& state)
{
    NFoldCat x = bench_tower(static_cast<int>(state.range(0)), 5000);
    HdCert cert = certify_hd(x);
    for (auto _ : state)
        benchmark::DoNotOptimize(eqr_to_nfold(nfold_to_eqr(x, cert)));
}
BENCHMARK(BM_RoundTrip)->DenseRange(1, 3);

void BM_InducedSegal(benchmark::State& state)
{
    NFoldCat x = bench_tower(2, 1000);
    HdCert cert = certify_hd(x);
    const int s = static_cast<int>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(check_induced_segal_equiv(x, cert, s));
}
BENCHMARK(BM_InducedSegal)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

void BM_Multinerve(benchmark::State& state)
{
    NFoldCat x = bench_tower(2, 1000);
    const int k = static_cast<int>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(evaluate_multinerve(x, MultiIndex{k, k}));
}
BENCHMARK(BM_Multinerve)->DenseRange(2, 4);

void BM_ZeroType(benchmark::State& state)
{
    NFoldCat x = bench_tower(static_cast<int>(state.range(0)), 5000);
    HdCert cert = certify_hd(x);
    for (auto _ : state)
        benchmark::DoNotOptimize(verify_zero_type(x, cert));
}
BENCHMARK(BM_ZeroType)->DenseRange(1, 3);

void BM_SmithSparse(benchmark::State& state)
{
    const std::size_t size = static_cast<std::size_t>(state.range(0));
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<int> value(-3, 3);
    std::bernoulli_distribution present(0.05);
    SparseIntMatrix m{size, size, {}};
    for (std::size_t r = 0; r < size; ++r)
        for (std::size_t c = 0; c < size; ++c)
            if (present(rng))
                m.entries.push_back({r, c, value(rng)});
    for (auto _ : state)
        benchmark::DoNotOptimize(smith_normal_form(m));
}
BENCHMARK(BM_SmithSparse)->Arg(50)->Arg(100)->Arg(200)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
