#include <benchmark/benchmark.h>

#include "sortpm/design.hpp"
#include "sortpm/kinematics.hpp"
#include "sortpm/singularity.hpp"
#include "sortpm/workspace.hpp"

namespace {

using namespace sortpm;

const GeometryParams kParams = GeometryParams::verification_set();

void fk_enumerate_all_modes(benchmark::State& state) {
    const JointInput q{-244.59, 303.32, -252.26};
    for (auto _ : state) benchmark::DoNotOptimize(fk_enumerate(kParams, q));
}
BENCHMARK(fk_enumerate_all_modes);

void ik_enumerate_all_modes(benchmark::State& state) {
    const PlatformPose pose{-84.59, 428.72, 0.3045};
    for (auto _ : state) benchmark::DoNotOptimize(ik_enumerate(kParams, pose));
}
BENCHMARK(ik_enumerate_all_modes);

void analytic_jacobian_pair(benchmark::State& state) {
    const JointInput q{-244.59, 303.32, -252.26};
    const KinematicSolution s = fk_branch(kParams, q, BranchSelector(1, 1, -1));
    for (auto _ : state) benchmark::DoNotOptimize(analytic_jacobians(kParams, s.pose(), q, s.branch.s2()));
}
BENCHMARK(analytic_jacobian_pair);

// Joint grid with count^3 points on one assembly mode.
void workspace_grid(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const SampleGrid g{{AxisRange{-300.0, 300.0, n}, AxisRange{-300.0, 600.0, n}, AxisRange{-400.0, 400.0, n}}};
    for (auto _ : state) benchmark::DoNotOptimize(sample_workspace(kParams, g, BranchSelector(1, 1, -1), 1));
    state.SetItemsProcessed(state.iterations() * n * n * n);
}
BENCHMARK(workspace_grid)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

void min_l6_search_default(benchmark::State& state) {
    const DesignSpec spec;
    for (auto _ : state) benchmark::DoNotOptimize(min_l6_search(spec, 0.05, 1));
}
BENCHMARK(min_l6_search_default)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
