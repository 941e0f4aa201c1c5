/**
 * @file  batch.hpp
 * @brief Batch kernels over many poses or joint vectors.
 */

#pragma once

#include "ppps/kinematics.hpp"
#include "ppps/singularity.hpp"

#include <span>
#include <vector>

namespace ppps {

std::vector<FullJointState> inverse_kinematics_batch(
    std::span<const Pose> poses, Execution execution = Execution::Parallel);

/// Each entry is solved with `options` except that its seeds run serially
/// when the batch itself is parallel.
std::vector<DKOutcome> direct_kinematics_batch(
    std::span<const ActuatedJoints> joints, const SolverOptions& options,
    Execution execution = Execution::Parallel);

std::vector<SingularityReport> singularity_report_batch(
    std::span<const Pose> poses, Execution execution = Execution::Parallel);

}  // namespace ppps
