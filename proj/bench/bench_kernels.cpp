#include <benchmark/benchmark.h>

#include <cmath>

#include "polylb/kernels.hpp"
#include "polylb/oracle.hpp"

using namespace polylb;

namespace {

const ProbMeasure& two_blocks() {
    static const ProbMeasure mu = ProbMeasure::uniform(RealSet::normalize({{0.0, 0.4}, {0.6, 1.0}}));
    return mu;
}

void BM_MomentsSerial(benchmark::State& st) {
    for (auto _ : st)
        benchmark::DoNotOptimize(kernels::mc_vandermonde_moments_serial(two_blocks(), 3, st.range(0), 7));
}

void BM_MomentsParallel(benchmark::State& st) {
    for (auto _ : st)
        benchmark::DoNotOptimize(kernels::mc_vandermonde_moments(two_blocks(), 3, st.range(0), 7));
}

kernels::ObjectiveFn ratio_objective() {
    static const RatioProblem prob =
        RatioProblem::lebesgue(RealSet::normalize({{0.0, 0.4}, {0.6, 1.0}}), RealSet::single({0.2, 0.9}), 3, 1);
    return [](std::span<const double> q) { return ratio_value(prob, Polynomial(std::vector<double>(q.begin(), q.end()))); };
}

void BM_ScanSerial(benchmark::State& st) {
    const auto f = ratio_objective();
    for (auto _ : st) benchmark::DoNotOptimize(kernels::sphere_scan_serial(4, st.range(0), 11, f, 10));
}

void BM_ScanParallel(benchmark::State& st) {
    const auto f = ratio_objective();
    for (auto _ : st) benchmark::DoNotOptimize(kernels::sphere_scan(4, st.range(0), 11, f, 10));
}

double slack(std::int64_t i) {
    const auto p = kernels::sphere_point(5, 3, i);
    double s = 0.0;
    for (double c : p) s += std::abs(c);
    return s - 1.0;
}

void BM_BatchSerial(benchmark::State& st) {
    for (auto _ : st) benchmark::DoNotOptimize(kernels::evaluate_batch_serial(st.range(0), 1e-9, slack));
}

void BM_BatchParallel(benchmark::State& st) {
    for (auto _ : st) benchmark::DoNotOptimize(kernels::evaluate_batch(st.range(0), 1e-9, slack));
}

}  // namespace

BENCHMARK(BM_MomentsSerial)->Arg(1 << 16)->Arg(1 << 18)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MomentsParallel)->Arg(1 << 16)->Arg(1 << 18)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ScanSerial)->Arg(1 << 12)->Arg(1 << 14)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ScanParallel)->Arg(1 << 12)->Arg(1 << 14)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BatchSerial)->Arg(1 << 16)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BatchParallel)->Arg(1 << 16)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
