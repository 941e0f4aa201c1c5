/**
 * @file  selfmotion.hpp
 * @brief Detection of the Cardanic self-motion in joint space and generation
 *        of the one-parameter family of platform poses it induces.
 *
 * The self-motion exists iff rho1y + rho2y + rho3y = 0 and
 * rho1z = rho2z = rho3z. The family members have orientations
 * q(theta) = (0, cos theta, sin theta, 0), i.e. half-turns of the platform
 * about a horizontal axis at angle theta (the platform is flipped), with
 * y = rho1y, z = rho1z and x(theta) fixed by the leg-2 planar constraint.
 * theta and theta + pi give the same member.
 */

#pragma once

#include "ppps/model.hpp"
#include "ppps/parallel.hpp"

#include <vector>

namespace ppps {

struct SelfMotionCondition {
  static constexpr double kTolerance = 1e-10;

  bool holds = false;
  double sum_rho_y = 0.0;        ///< rho1y + rho2y + rho3y
  double rho1z_minus_rho2z = 0.0;
  double rho2z_minus_rho3z = 0.0;

  double worst() const;
};

SelfMotionCondition self_motion_condition(const ActuatedJoints& joints);

struct FamilyMember {
  double theta = 0.0;
  Pose pose;
  double max_residual = 0.0;
};

/// The Cardanic family anchored at joint values satisfying the condition.
class CardanicFamily {
 public:
  /// Throws KinematicsError(NotSelfMotion) when the condition fails.
  explicit CardanicFamily(const ActuatedJoints& anchor);

  const ActuatedJoints& joint_anchor() const { return anchor_; }

  /// Family member at theta. x is obtained by solving the (affine in x)
  /// leg-2 planar constraint for the given orientation.
  Pose at(double theta) const;

  /// `count` members at theta_k = 2 pi k / count, in order of k.
  std::vector<FamilyMember> sample(int count,
                                   Execution execution = Execution::Parallel) const;

 private:
  ActuatedJoints anchor_;
};

/// Throws KinematicsError(NotSelfMotion) when the condition fails.
CardanicFamily cardanic_family(const ActuatedJoints& joints);

/// True when q lies on the self-motion orientation circle
/// (q1 = q4 = 0, q2^2 + q3^2 = 1) within `tolerance`.
bool on_self_motion_circle(const UnitQuaternion& q, double tolerance = 1e-6);

struct AxesCheck {
  static constexpr double kTolerance = 1e-8;

  bool concurrent = false;
  Vec3 meeting_point{Vec3::Zero()};
  /// sqrt of the minimized sum of squared point-to-axis distances.
  double intersection_residual = 0.0;
  /// Largest deviation of a pairwise axis angle from 2 pi / 3.
  double angle_error = 0.0;
};

/// Least-squares concurrency test of the three passive prismatic axes at a
/// pose, together with their pairwise angles.
AxesCheck self_motion_axes(const Pose& pose);

bool self_motion_axes_check(const Pose& pose);

}  // namespace ppps
