#include <benchmark/benchmark.h>

#include "zecap/campaign.hpp"
#include "zecap/capacity.hpp"
#include "zecap/channel.hpp"
#include "zecap/cj.hpp"
#include "zecap/product.hpp"
#include "zecap/rng.hpp"

namespace {

using namespace zecap;

Channel bench_channel(int d, int env, std::uint64_t seed) {
    return random_channel(d, env, seed);
}

void BM_CJMatrix(benchmark::State& state) {
    const int d = static_cast<int>(state.range(0));
    const Channel ch = bench_channel(d, 3, 11);
    const CPMap pullback = compose(dual(ch), ch);
    for (auto _ : state) {
        benchmark::DoNotOptimize(cj_matrix(pullback));
    }
}
BENCHMARK(BM_CJMatrix)->Arg(2)->Arg(3)->Arg(4);

void BM_Support(benchmark::State& state) {
    const int d = static_cast<int>(state.range(0));
    const Channel ch = bench_channel(d, 3, 12);
    const CJMatrix m = cj_matrix(compose(dual(ch), ch));
    for (auto _ : state) {
        benchmark::DoNotOptimize(support(m));
    }
}
BENCHMARK(BM_Support)->Arg(2)->Arg(3)->Arg(4);

void BM_FindProductSubspace(benchmark::State& state) {
    // A Haar-random dim-d subspace of d (x) d keeps the alternating search
    // on its nontrivial path (a channel complement is often dim 0 or 1).
    const int d = static_cast<int>(state.range(0));
    Rng rng(13);
    const Subspace s{haar_isometry(d * d, d, rng), {d, d}};
    ProductSearchOptions opts;
    opts.seed = 5;
    for (auto _ : state) {
        benchmark::DoNotOptimize(find_product_in_subspace(s, opts));
    }
}
BENCHMARK(BM_FindProductSubspace)->Arg(2)->Arg(3);

void BM_MinOverlapSearch(benchmark::State& state) {
    const int d = static_cast<int>(state.range(0));
    const Channel ch = bench_channel(d, 3, 14);
    MinOverlapOptions opts;
    opts.restarts = 8;
    opts.seed = 5;
    for (auto _ : state) {
        benchmark::DoNotOptimize(min_overlap_search(ch, opts));
    }
}
BENCHMARK(BM_MinOverlapSearch)->Arg(2)->Arg(3);

void BM_OneShotVerdict(benchmark::State& state) {
    const int d = static_cast<int>(state.range(0));
    const Channel ch = bench_channel(d, 3, 15);
    AnalysisOptions opts;
    opts.search.seed = 1;
    opts.minimize.seed = 2;
    for (auto _ : state) {
        benchmark::DoNotOptimize(one_shot_zero_error_positive(ch, opts));
    }
}
BENCHMARK(BM_OneShotVerdict)->Arg(2)->Arg(3);

void BM_SuperactivationPair(benchmark::State& state) {
    Rng rng(21);
    AnalysisOptions analysis;
    const Channel a = random_zero_capacity_channel(2, 2, 1e-3, analysis, rng);
    const Channel b = random_zero_capacity_channel(2, 2, 1e-3, analysis, rng);
    SuperactivationOptions opts;
    opts.use_fast_path = state.range(0) != 0;
    opts.seed = 7;
    for (auto _ : state) {
        benchmark::DoNotOptimize(superactivation_analysis({a, b}, opts));
    }
}
BENCHMARK(BM_SuperactivationPair)->Arg(1)->Arg(0);

void BM_LemmaCheck(benchmark::State& state) {
    const int m = static_cast<int>(state.range(0));
    Rng rng(31);
    const LemmaInstance inst =
        random_lemma_instance(3, m, m == 2 ? 1 : 2, false, rng);
    for (auto _ : state) {
        benchmark::DoNotOptimize(lemma_instance_check(inst));
    }
}
BENCHMARK(BM_LemmaCheck)->Arg(2)->Arg(3);

}  // namespace

BENCHMARK_MAIN();
