#include <benchmark/benchmark.h>

#include <cmath>

#include "tscale/dynamic.hpp"
#include "tscale/exponential.hpp"
#include "tscale/trig.hpp"

using namespace tscale;

namespace {

/// [0,2] + ten isolated points + [5,8]
const TimeScale& mixed() {
    static const TimeScale ts = [] {
        std::vector<Component> c{ClosedInterval{0, 2}};
        for (int k = 1; k <= 10; ++k) {
            c.emplace_back(IsolatedPoint{2.0 + 0.25 * k});
        }
        c.emplace_back(ClosedInterval{5, 8});
        return TimeScale(std::move(c));
    }();
    return ts;
}

Execution exec_of(const benchmark::State& state) {
    return state.range(1) == 0 ? Execution::Serial : Execution::Parallel;
}

void args(benchmark::internal::Benchmark* b) {
    for (long n : {1000, 10000, 100000}) {
        b->Args({n, 0});
        b->Args({n, 1});
    }
    b->ArgNames({"points", "parallel"});
}

void BM_exp_grid(benchmark::State& state) {
    const double step = 5.0 / static_cast<double>(state.range(0));
    const auto grid = make_grid(mixed(), step);
    const auto a = Coefficient::piecewise({3.0}, {Polynomial{{0.3, 0.2}}, Polynomial{{-0.1}}});
    for (auto _ : state) {
        auto ev = exp_evaluate_grid(ExpFamily::Cayley, mixed(), a, 0.0, grid, 1e-12,
                                    exec_of(state));
        benchmark::DoNotOptimize(ev.values.data());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<long>(grid.size()));
}
BENCHMARK(BM_exp_grid)->Apply(args)->Unit(benchmark::kMillisecond);

void BM_pythagorean(benchmark::State& state) {
    const double step = 5.0 / static_cast<double>(state.range(0));
    const auto grid = make_grid(mixed(), step);
    for (auto _ : state) {
        auto r = pythagorean_residual(TrigFamily::Cayley, TrigKind::Trigonometric, mixed(),
                                      Coefficient::constant(1.7), 0.0, grid, 1e-12,
                                      exec_of(state));
        benchmark::DoNotOptimize(r.max_residual);
    }
    state.SetItemsProcessed(state.iterations() * static_cast<long>(grid.size()));
}
BENCHMARK(BM_pythagorean)->Apply(args)->Unit(benchmark::kMillisecond);

void BM_exact_oscillator(benchmark::State& state) {
    const auto ts = TimeScale::uniform(0, 0.01, static_cast<std::size_t>(state.range(0)));
    const auto grid = make_grid(ts, 1.0);
    const auto x = sample(grid, [](double t) { return cplx{std::sin(2.0 * t)}; });
    for (auto _ : state) {
        auto r = oscillator_residual_exact(ts, 2.0, x, 1e-10, exec_of(state));
        benchmark::DoNotOptimize(r.max_form_gap);
    }
    state.SetItemsProcessed(state.iterations() * static_cast<long>(grid.size()));
}
BENCHMARK(BM_exact_oscillator)->Apply(args)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
