#include <benchmark/benchmark.h>

#include "qorbit/scalar.hpp"

using namespace qorbit;

static void QnumProduct(benchmark::State& state) {
    for (auto _ : state) {
        Scalar acc(1);
        for (long k = 1; k <= state.range(0); ++k) acc *= qnum(ExpLin(k));
        benchmark::DoNotOptimize(acc);
    }
}
BENCHMARK(QnumProduct)->Arg(8)->Arg(16);

static void RationalAddChain(benchmark::State& state) {
    for (auto _ : state) {
        Scalar acc(0);
        for (long k = 1; k <= state.range(0); ++k)
            acc += Scalar(1) / (Scalar::p_power(k) - Scalar::p_power(-k));
        benchmark::DoNotOptimize(acc);
    }
}
BENCHMARK(RationalAddChain)->Arg(8)->Arg(16);

BENCHMARK_MAIN();
