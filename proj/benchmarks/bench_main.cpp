#include <benchmark/benchmark.h>

#include "modq/domain.hpp"
#include "modq/gen.hpp"
#include "modq/modsolve.hpp"
#include "modq/poly.hpp"
#include "modq/reductions.hpp"

namespace {

void BM_cw_factor(benchmark::State& state) {
    auto sys = modq::gen::system(3, 4, 2, 3, 7);
    for (auto _ : state) {
        auto factors = modq::cw_factors(sys);
        benchmark::DoNotOptimize(factors);
    }
}
BENCHMARK(BM_cw_factor);

void BM_check_cw_lemma(benchmark::State& state) {
    auto sys = modq::gen::system(3, static_cast<int>(state.range(0)), 2, 2, 11);
    for (auto _ : state) {
        modq::Budget budget(1'000'000'000);
        benchmark::DoNotOptimize(modq::check_cw_lemma(sys, budget));
    }
}
BENCHMARK(BM_check_cw_lemma)->Arg(3)->Arg(4);

void BM_subset_rank_roundtrip(benchmark::State& state) {
    for (auto _ : state)
        for (std::uint64_t r = 0; r < 100; ++r)
            benchmark::DoNotOptimize(modq::subset_rank(modq::subset_unrank(r, 20, 5)));
}
BENCHMARK(BM_subset_rank_roundtrip);

void BM_solve_bis_pow2(benchmark::State& state) {
    auto inst = modq::gen::bis(8, 2, 5);
    for (auto _ : state) benchmark::DoNotOptimize(modq::solve_bis_pow2(inst));
}
BENCHMARK(BM_solve_bis_pow2);

void BM_lonely_to_leaf(benchmark::State& state) {
    auto inst = modq::gen::lonely(3, 4, 1, 3);
    for (auto _ : state) benchmark::DoNotOptimize(modq::lonely_to_leaf(inst));
}
BENCHMARK(BM_lonely_to_leaf);

void BM_lonely_to_chevsym(benchmark::State& state) {
    auto inst = modq::gen::lonely_circuit(2, 2, 4, 1);
    for (auto _ : state) {
        modq::Budget budget(1'000'000'000);
        benchmark::DoNotOptimize(modq::lonely_to_chevsym(inst, budget));
    }
}
BENCHMARK(BM_lonely_to_chevsym);

} // namespace
