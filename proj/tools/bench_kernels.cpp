// Benchmarks the OpenMP kernels against their serial reference paths:
// sparse polynomial products and Schouten brackets on dense random inputs.

#include <benchmark/benchmark.h>

#include "plift/brackets.hpp"
#include "plift/parallel.hpp"
#include "plift/rng.hpp"

using namespace plift;

namespace {

Poly dense_poly(const ChartPtr& chart, uint32_t deg, Rng& rng) {
    Poly p(chart);
    std::vector<IndexTuple> dummy;
    std::function<void(Exponents&, int, uint32_t)> rec = [&](Exponents& e, int slot, uint32_t left) {
        if (slot == chart->arity()) {
            long c = rng.range(-9, 9);
            if (c != 0) p.add_term(e, Scalar(c));
            return;
        }
        for (uint32_t k = 0; k <= left; ++k) {
            e[static_cast<size_t>(slot)] = k;
            rec(e, slot + 1, left - k);
        }
        e[static_cast<size_t>(slot)] = 0;
    };
    Exponents e(static_cast<size_t>(chart->arity()), 0u);
    rec(e, 0, deg);
    return p;
}

Multivector random_bivector(const ChartPtr& chart, uint32_t deg, Rng& rng) {
    Multivector w(chart, 2);
    for (int i = 0; i < chart->arity(); ++i)
        for (int j = i + 1; j < chart->arity(); ++j) w.set_component({i, j}, RatFunc(dense_poly(chart, deg, rng)));
    return w;
}

ChartPtr bench_chart() {
    return Chart::make_base("B", {"x1", "x2", "x3", "x4"});
}

void bm_poly_mul_serial(benchmark::State& state) {
    Rng rng(7);
    ChartPtr chart = bench_chart();
    Poly a = dense_poly(chart, static_cast<uint32_t>(state.range(0)), rng);
    Poly b = dense_poly(chart, static_cast<uint32_t>(state.range(0)), rng);
    for (auto _ : state) {
        auto r = kernels::mul_terms_serial(a.terms(), b.terms());
        benchmark::DoNotOptimize(r);
    }
}

void bm_poly_mul_parallel(benchmark::State& state) {
    Rng rng(7);
    ChartPtr chart = bench_chart();
    Poly a = dense_poly(chart, static_cast<uint32_t>(state.range(0)), rng);
    Poly b = dense_poly(chart, static_cast<uint32_t>(state.range(0)), rng);
    for (auto _ : state) {
        auto r = kernels::mul_terms_parallel(a.terms(), b.terms());
        benchmark::DoNotOptimize(r);
    }
}

void bm_schouten_serial(benchmark::State& state) {
    Rng rng(11);
    ChartPtr chart = bench_chart();
    Multivector P = random_bivector(chart, static_cast<uint32_t>(state.range(0)), rng);
    par::set_enabled(false);
    for (auto _ : state) {
        auto r = schouten_bracket(P, P);
        benchmark::DoNotOptimize(r);
    }
}

void bm_schouten_parallel(benchmark::State& state) {
    Rng rng(11);
    ChartPtr chart = bench_chart();
    Multivector P = random_bivector(chart, static_cast<uint32_t>(state.range(0)), rng);
    par::set_enabled(true);
    for (auto _ : state) {
        auto r = schouten_bracket(P, P);
        benchmark::DoNotOptimize(r);
    }
}

} // namespace

BENCHMARK(bm_poly_mul_serial)->Arg(6)->Arg(8)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_poly_mul_parallel)->Arg(6)->Arg(8)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_schouten_serial)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_schouten_parallel)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
