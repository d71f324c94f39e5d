#include <benchmark/benchmark.h>

#include "wflow/flow.hpp"

using namespace wflow;

namespace {

const CurvatureProfile kWideProfile{{1.31, 7}, {0.42, 8}};  // n = 15

void BM_MeanCurvatureEval(benchmark::State& state) {
    const auto spec = WeingartenSpec::mean_curvature(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(eval(spec, kWideProfile));
}
BENCHMARK(BM_MeanCurvatureEval)->Arg(2)->Arg(7)->Arg(15);

void BM_MunznerProfile(benchmark::State& state) {
    const auto fam = IsoparametricFamily::sphere_munzner(6, {1, 1, 1, 1, 1, 1});
    double tau = 0.3;
    for (auto _ : state) {
        benchmark::DoNotOptimize(fam.principal_curvatures(tau));
        tau = tau == 0.3 ? 0.4 : 0.3;
    }
}
BENCHMARK(BM_MunznerProfile);

void BM_SphereFlowIntegrate(benchmark::State& state) {
    const FlowProblem problem(IsoparametricFamily::geodesic_sphere(
                                  AmbientSpace::space_form(Epsilon::Euclidean, 3)),
                              WeingartenSpec::squared_norm(), 1.0);
    SolverConfig cfg;
    for (auto _ : state) benchmark::DoNotOptimize(integrate(problem, cfg));
}
BENCHMARK(BM_SphereFlowIntegrate)->Unit(benchmark::kMillisecond);

void BM_CollapseQuadrature(benchmark::State& state) {
    const FlowProblem problem(IsoparametricFamily::hf_geodesic_sphere(Field::Octonion, 2),
                              WeingartenSpec::mean_curvature(1), 1.0);
    for (auto _ : state) benchmark::DoNotOptimize(collapse_time(problem, 1e-10));
}
BENCHMARK(BM_CollapseQuadrature)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
