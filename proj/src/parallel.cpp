#include "ppps/batch.hpp"
#include "ppps/parallel.hpp"

#include <omp.h>

#include <algorithm>

namespace ppps {

void parallel_for(std::size_t count, Execution execution,
                  const std::function<void(std::size_t)>& body) {
  if (execution == Execution::Serial || count < 2 || omp_in_parallel()) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  const auto n = static_cast<long long>(count);
  // About eight chunks per thread: enough to balance uneven DK work without
  // paying a scheduling round trip per cheap IK item.
  const int chunk = static_cast<int>(
      std::max<long long>(1, n / (8LL * omp_get_max_threads())));
#pragma omp parallel for schedule(dynamic, chunk)
  for (long long i = 0; i < n; ++i) body(static_cast<std::size_t>(i));
}

int max_threads() { return omp_get_max_threads(); }

std::vector<FullJointState> inverse_kinematics_batch(std::span<const Pose> poses,
                                                     Execution execution) {
  std::vector<FullJointState> out(poses.size());
  parallel_for(poses.size(), execution,
               [&](std::size_t i) { out[i] = inverse_kinematics(poses[i]); });
  return out;
}

std::vector<DKOutcome> direct_kinematics_batch(
    std::span<const ActuatedJoints> joints, const SolverOptions& options,
    Execution execution) {
  SolverOptions inner = options;
  if (execution == Execution::Parallel) inner.execution = Execution::Serial;
  std::vector<DKOutcome> out(joints.size());
  parallel_for(joints.size(), execution, [&](std::size_t i) {
    out[i] = direct_kinematics(joints[i], inner);
  });
  return out;
}

std::vector<SingularityReport> singularity_report_batch(
    std::span<const Pose> poses, Execution execution) {
  std::vector<SingularityReport> out(poses.size());
  parallel_for(poses.size(), execution,
               [&](std::size_t i) { out[i] = singularity_report(poses[i]); });
  return out;
}

}  // namespace ppps
