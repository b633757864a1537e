#include <benchmark/benchmark.h>

#include <random>

#include "latticecut/coa.hpp"
#include "latticecut/standard_form.hpp"

using namespace latticecut;

namespace {

const ApxIpOracle kOracle = [](const OracleQuery& q) { return enumeration_oracle(q); };

Polytope make_box(std::size_t n, long side) {
    QMat a(2 * n, n);
    QVec b(2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        a(2 * i, i) = 1;
        b[2 * i] = side;
        a(2 * i + 1, i) = -1;
        b[2 * i + 1] = 0;
    }
    return Polytope(std::move(a), std::move(b));
}

Polytope random_simplexish(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<long> c(-5, 5);
    for (;;) {
        QMat a(3 + 2 * n, n);
        QVec b(3 + 2 * n);
        for (std::size_t i = 0; i < 3; ++i) {
            for (std::size_t j = 0; j < n; ++j) a(i, j) = c(rng);
            b[i] = 7;
        }
        for (std::size_t j = 0; j < n; ++j) {
            a(3 + 2 * j, j) = 1;
            b[3 + 2 * j] = 5;
            a(3 + 2 * j + 1, j) = -1;
            b[3 + 2 * j + 1] = 5;
        }
        auto k = Polytope::try_create(a, b);
        if (k && k->full_dimensional()) return *k;
        seed = mix_seed(seed, 1);
        rng.seed(seed);
    }
}

void BM_SolveLpSupport(benchmark::State& state) {
    const std::size_t n = state.range(0);
    Polytope k = random_simplexish(n, 77);
    QVec y(n, Rat(1));
    for (auto _ : state) benchmark::DoNotOptimize(k.support(y));
}
BENCHMARK(BM_SolveLpSupport)->Arg(2)->Arg(4)->Arg(6);

void BM_LllReduce(benchmark::State& state) {
    const std::size_t n = state.range(0);
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<long> c(-9, 9);
    QMat b(n, n);
    do {
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) b(i, j) = c(rng);
    } while (b.rank() != n);
    for (auto _ : state) benchmark::DoNotOptimize(lll_reduce(b));
}
BENCHMARK(BM_LllReduce)->Arg(3)->Arg(5);

void BM_EnumeratePoints(benchmark::State& state) {
    const std::size_t n = state.range(0);
    Polytope k = make_box(n, 4);
    AffineLattice l = AffineLattice::standard(n);
    for (auto _ : state) {
        std::size_t count = 0;
        enumerate_points(l, k, [&](const QVec&) {
            ++count;
            return true;
        });
        benchmark::DoNotOptimize(count);
    }
}
BENCHMARK(BM_EnumeratePoints)->Arg(2)->Arg(3);

void BM_CentroidRounding(benchmark::State& state) {
    Polytope k = random_simplexish(state.range(0), 99);
    for (auto _ : state) benchmark::DoNotOptimize(centroid_and_rounding(k, 3, 2048));
}
BENCHMARK(BM_CentroidRounding)->Arg(2)->Arg(3);

void BM_CutOrAverage(benchmark::State& state) {
    Polytope k = make_box(state.range(0), 6);
    AffineLattice l = AffineLattice::standard(state.range(0));
    const long ell = 5 * (state.range(0) + 1);
    for (auto _ : state) benchmark::DoNotOptimize(cut_or_average(k, l, ell, kOracle, {}));
}
BENCHMARK(BM_CutOrAverage)->Arg(2)->Arg(3);

void BM_SubsetSumCells(benchmark::State& state) {
    const std::size_t n = state.range(0);
    std::vector<long> z, u;
    long t = 0;
    for (std::size_t i = 0; i < n; ++i) {
        z.push_back(3 + static_cast<long>(i) * 2);
        u.push_back(8);
        t += z.back() * 2;
    }
    for (auto _ : state) benchmark::DoNotOptimize(subset_sum(z, t, u, kOracle, 1));
}
BENCHMARK(BM_SubsetSumCells)->Arg(2)->Arg(4);

void BM_ResidueExactIp(benchmark::State& state) {
    Polytope k = make_box(2, 3);
    AffineLattice l = AffineLattice::standard(2);
    for (auto _ : state) benchmark::DoNotOptimize(solve_exact_ip(k, l, kOracle, {}));
}
BENCHMARK(BM_ResidueExactIp);

}  // namespace

BENCHMARK_MAIN();
