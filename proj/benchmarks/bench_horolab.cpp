#include "horolab/horolab.hpp"

#include <benchmark/benchmark.h>

#include <cmath>
#include <numbers>

using namespace horolab;

namespace {

void BM_delta_m(benchmark::State& state) {
    const double y = std::pow(10.0, -double(state.range(0)));
    const MajorantParams p{3, 1, 20, 0, 1};
    const TorusMatrix xi{Row2{std::numbers::sqrt2, std::numbers::sqrt3}};
    for (auto _ : state)
        benchmark::DoNotOptimize(delta_m(p, y, xi).value);
}
BENCHMARK(BM_delta_m)->DenseRange(2, 6, 2)->Unit(benchmark::kMillisecond);

void BM_s_gq(benchmark::State& state) {
    const auto g = GroupElement::from_xi({Row2{std::numbers::phi, 0.2}, Row2{0.3, std::numbers::sqrt2}},
                                         iwasawa_compose({0.4, 1.7, 0.9}));
    const double T = std::pow(10.0, double(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(s_gq(g, {2, -1}, T));
}
BENCHMARK(BM_s_gq)->DenseRange(1, 5, 2);

void BM_coset_ball(benchmark::State& state) {
    const auto cs = make_coset(2, IntMatrix2::identity());
    const double rho = double(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(enumerate_coset_ball(cs, rho, Sl2Matrix::identity()).size());
}
BENCHMARK(BM_coset_ball)->RangeMultiplier(4)->Range(4, 256);

void BM_evaluate_f(benchmark::State& state) {
    PoincareTestFn f{1, 1, {IntRow2{1, 0}}, {2.0, 0.3}};
    const TorusMatrix xi{Row2{std::numbers::phi, 0.2}};
    const Sl2Matrix M = iwasawa_compose({0.3, 1.2, 0.4});
    for (auto _ : state)
        benchmark::DoNotOptimize(evaluate_f(f, xi, M));
}
BENCHMARK(BM_evaluate_f);

void BM_kloosterman(benchmark::State& state) {
    const long long q = state.range(0);
    for (auto _ : state)
        benchmark::DoNotOptimize(kloosterman(3, 7, q));
}
BENCHMARK(BM_kloosterman)->RangeMultiplier(10)->Range(10, 100000);

void BM_quad_expsum_closed(benchmark::State& state) {
    const auto cd = make_congruence(state.range(0), 2, {1, 0, 0, 1}, {1, 2, 3, 4});
    for (auto _ : state)
        benchmark::DoNotOptimize(quad_expsum_closed(cd));
}
BENCHMARK(BM_quad_expsum_closed)->RangeMultiplier(4)->Range(4, 256);

} // namespace
BENCHMARK_MAIN();
