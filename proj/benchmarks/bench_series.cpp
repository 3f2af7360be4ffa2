#include <benchmark/benchmark.h>

#include "piseries/constants.hpp"
#include "piseries/engine.hpp"

using namespace piseries;

namespace {

const Catalog& cat() {
    static Catalog c = load_catalog(PISERIES_CATALOG_FILE);
    return c;
}

void BM_evaluate(benchmark::State& state, const char* code, int digits) {
    const Identity& id = cat().at(code);
    for (auto _ : state) {
        EvalReport r = evaluate(id, digits);
        benchmark::DoNotOptimize(r.terms);
    }
}

void BM_trinomial_stream(benchmark::State& state) {
    // raw three-term recurrence, bypassing the kernel cache
    long n = state.range(0);
    const long b = 62, c = 1;
    for (auto _ : state) {
        BigInt prev(1), cur(b);
        for (long m = 1; m < n; ++m) {
            BigInt nxt = (2 * m + 1) * b * cur - BigInt(m) * (b * b - 4 * c) * prev;
            mpz_divexact_ui(nxt.get_mpz_t(), nxt.get_mpz_t(), static_cast<unsigned long>(m + 1));
            prev = std::move(cur);
            cur = std::move(nxt);
        }
        benchmark::DoNotOptimize(cur.get_mpz_t());
    }
}

void BM_kernel_s2(benchmark::State& state) {
    Kernel k = Kernel::family(KernelTag::S2, BigRat(18));
    for (auto _ : state) {
        BigRat v = kernel_term(k, state.range(0));
        benchmark::DoNotOptimize(v.get_num().get_mpz_t());
    }
}

void BM_const_pi(benchmark::State& state) {
    for (auto _ : state) {
        Ball p = const_pi(static_cast<int>(state.range(0)));
        benchmark::DoNotOptimize(p.rad());
    }
}

void BM_catalog_load(benchmark::State& state) {
    for (auto _ : state) {
        Catalog c = load_catalog(PISERIES_CATALOG_FILE);
        benchmark::DoNotOptimize(c.identities.size());
    }
}

}  // namespace

BENCHMARK_CAPTURE(BM_evaluate, I1_30, "I1", 30)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_evaluate, VI3_50, "VI3", 50)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_evaluate, II9_30_ball, "II9", 30)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_evaluate, s2_slow_2_16, "2.16", 30)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_trinomial_stream)->Arg(2000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_kernel_s2)->Arg(200)->Arg(800);
BENCHMARK(BM_const_pi)->Arg(30)->Arg(100);
BENCHMARK(BM_catalog_load)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
