// Serial reference vs OpenMP kernels on identical inputs.

#include "ppps/batch.hpp"

#include <benchmark/benchmark.h>

#include <random>

namespace {

using namespace ppps;

std::vector<Pose> make_poses(std::size_t count) {
  std::mt19937_64 rng(1);
  std::normal_distribution<double> n;
  std::uniform_real_distribution<double> u(-1, 1);
  std::vector<Pose> poses;
  poses.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    poses.emplace_back(u(rng), u(rng), u(rng),
                       UnitQuaternion::normalized(Vec4(n(rng), n(rng), n(rng), n(rng))));
  }
  return poses;
}

Execution mode(const benchmark::State& state) {
  return state.range(0) == 0 ? Execution::Serial : Execution::Parallel;
}

void BM_InverseKinematics(benchmark::State& state) {
  const auto poses = make_poses(100000);
  for (auto _ : state) {
    benchmark::DoNotOptimize(inverse_kinematics_batch(poses, mode(state)));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(poses.size()));
}

void BM_DirectKinematics(benchmark::State& state) {
  std::vector<ActuatedJoints> joints;
  for (const Pose& p : make_poses(64)) joints.push_back(inverse_kinematics(p).actuated);
  const SolverOptions options;
  for (auto _ : state) {
    benchmark::DoNotOptimize(direct_kinematics_batch(joints, options, mode(state)));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(joints.size()));
}

void BM_SingularityReports(benchmark::State& state) {
  const auto poses = make_poses(100000);
  for (auto _ : state) {
    benchmark::DoNotOptimize(singularity_report_batch(poses, mode(state)));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(poses.size()));
}

void BM_Surfaces(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(sample_singularity_surfaces(512, mode(state)));
  }
}

void BM_FamilySample(benchmark::State& state) {
  const CardanicFamily family({0.1, 0.2, 0.3, 0.2, -0.4, 0.2});
  for (auto _ : state) {
    benchmark::DoNotOptimize(family.sample(100000, mode(state)));
  }
}

// Argument 0 is the serial reference, 1 the parallel kernel.
BENCHMARK(BM_InverseKinematics)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_DirectKinematics)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_SingularityReports)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_Surfaces)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_FamilySample)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();

}  // namespace

BENCHMARK_MAIN();
