// Serial reference kernels against their OpenMP counterparts.
#include <random>

#include <benchmark/benchmark.h>

#include <mirrorgw/kernels.hpp>
#include <mirrorgw/periods.hpp>

using namespace mirrorgw;

namespace {

TPoly random_poly(std::mt19937_64& rng, std::size_t nvars, int degree, int terms)
{
    std::vector<Term> out;
    for (int i = 0; i < terms; ++i) {
        std::vector<int> e(nvars, 0);
        const int deg = static_cast<int>(rng() % static_cast<unsigned>(degree + 1));
        for (int k = 0; k < deg; ++k) ++e[rng() % nvars];
        out.push_back({Monomial::from_exponents(e), make_rational(static_cast<long>(rng() % 19) - 9,
                                                                  static_cast<long>(rng() % 7) + 1)});
    }
    return TPoly::from_terms(nvars, degree, std::move(out));
}

void BM_Mul(benchmark::State& state, bool parallel)
{
    std::mt19937_64 rng(1);
    const int terms = static_cast<int>(state.range(0));
    const TPoly a = random_poly(rng, 4, 12, terms);
    const TPoly b = random_poly(rng, 4, 12, terms);
    for (auto _ : state) {
        benchmark::DoNotOptimize(parallel ? kernels::mul_parallel(a, b) : kernels::mul_serial(a, b));
    }
    state.counters["threads"] = kernels::max_threads();
}

void BM_Combine(benchmark::State& state, bool parallel)
{
    std::mt19937_64 rng(2);
    std::vector<TPoly> weights;
    for (int i = 0; i < 60; ++i) weights.push_back(random_poly(rng, 3, 8, 40));
    std::vector<kernels::SparseRow> rows(static_cast<std::size_t>(state.range(0)));
    for (auto& r : rows) {
        for (std::size_t q = 0; q < weights.size(); ++q) {
            if (rng() % 4 == 0) r.entries.emplace_back(q, make_rational(static_cast<long>(rng() % 9) - 4, 5));
        }
    }
    for (auto _ : state) {
        benchmark::DoNotOptimize(parallel ? kernels::combine_parallel(weights, rows, 3, 8)
                                          : kernels::combine_serial(weights, rows, 3, 8));
    }
}

void BM_Substitute(benchmark::State& state, bool parallel)
{
    std::mt19937_64 rng(3);
    const int D = 8;
    std::vector<TPoly> images;
    for (std::size_t v = 0; v < 3; ++v) {
        TPoly img = TPoly::variable(3, D, v);
        img += random_poly(rng, 3, D, 10).homogeneous_part(2);
        images.push_back(img);
    }
    const Substitution sub(images, 3, D);
    std::vector<TPoly> in;
    for (int i = 0; i < state.range(0); ++i) in.push_back(random_poly(rng, 3, D, 30));
    for (auto _ : state) {
        benchmark::DoNotOptimize(parallel ? kernels::substitute_all_parallel(sub, in)
                                          : kernels::substitute_all_serial(sub, in));
    }
}

// End to end: the theta columns of CP2 use the parallel combine.
void BM_ThetaColumns(benchmark::State& state)
{
    const int D = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(theta_columns(2, D, default_windows(2, D)));
}

} // namespace

BENCHMARK_CAPTURE(BM_Mul, serial, false)->Arg(200)->Arg(800)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Mul, parallel, true)->Arg(200)->Arg(800)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Combine, serial, false)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Combine, parallel, true)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Substitute, serial, false)->Arg(32)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Substitute, parallel, true)->Arg(32)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ThetaColumns)->Arg(6)->Arg(9)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
