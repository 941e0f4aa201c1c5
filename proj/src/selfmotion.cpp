#include "ppps/selfmotion.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace ppps {

double SelfMotionCondition::worst() const {
  return std::max({std::abs(sum_rho_y), std::abs(rho1z_minus_rho2z),
                   std::abs(rho2z_minus_rho3z)});
}

SelfMotionCondition self_motion_condition(const ActuatedJoints& j) {
  SelfMotionCondition c;
  c.sum_rho_y = j.rho1y + j.rho2y + j.rho3y;
  c.rho1z_minus_rho2z = j.rho1z - j.rho2z;
  c.rho2z_minus_rho3z = j.rho2z - j.rho3z;
  c.holds = std::abs(c.sum_rho_y) <= SelfMotionCondition::kTolerance &&
            std::abs(c.rho1z_minus_rho2z) <= SelfMotionCondition::kTolerance &&
            std::abs(c.rho2z_minus_rho3z) <= SelfMotionCondition::kTolerance;
  return c;
}

CardanicFamily::CardanicFamily(const ActuatedJoints& anchor) : anchor_(anchor) {
  const SelfMotionCondition c = self_motion_condition(anchor);
  if (!anchor.finite() || !c.holds) {
    throw KinematicsError(
        ErrorKind::NotSelfMotion,
        "joint values do not satisfy the self-motion condition",
        {{"sum_rho_y", c.sum_rho_y},
         {"rho1z_minus_rho2z", c.rho1z_minus_rho2z},
         {"rho2z_minus_rho3z", c.rho2z_minus_rho3z}});
  }
}

Pose CardanicFamily::at(double theta) const {
  const UnitQuaternion q = UnitQuaternion::normalized(
      Vec4(0.0, std::cos(theta), std::sin(theta), 0.0));
  // The leg-2 planar residual is affine in x; two evaluations pin it down.
  const double r0 =
      constraint_residuals(Pose(0.0, anchor_.rho1y, anchor_.rho1z, q), anchor_)[2];
  const double r1 =
      constraint_residuals(Pose(1.0, anchor_.rho1y, anchor_.rho1z, q), anchor_)[2];
  const double x = -r0 / (r1 - r0);
  return Pose(x, anchor_.rho1y, anchor_.rho1z, q);
}

std::vector<FamilyMember> CardanicFamily::sample(int count,
                                                 Execution execution) const {
  if (count < 1) {
    throw KinematicsError(ErrorKind::InvalidInput,
                          "family sample count must be positive",
                          {{"count", static_cast<double>(count)}});
  }
  std::vector<FamilyMember> members(static_cast<std::size_t>(count));
  parallel_for(members.size(), execution, [&](std::size_t k) {
    FamilyMember& m = members[k];
    m.theta = 2.0 * std::numbers::pi * static_cast<double>(k) / count;
    m.pose = at(m.theta);
    m.max_residual = max_residual(m.pose, anchor_);
  });
  return members;
}

CardanicFamily cardanic_family(const ActuatedJoints& joints) {
  return CardanicFamily(joints);
}

bool on_self_motion_circle(const UnitQuaternion& q, double tolerance) {
  return std::abs(q.q1()) <= tolerance && std::abs(q.q4()) <= tolerance &&
         std::abs(q.q2() * q.q2() + q.q3() * q.q3() - 1.0) <= tolerance;
}

AxesCheck self_motion_axes(const Pose& pose) {
  const PlatformPoints c = platform_points(pose);
  std::array<Vec3, 3> dir;
  for (int i = 0; i < 3; ++i) dir[i] = passive_axis_direction(i + 1).normalized();

  // Point minimizing the summed squared distances to the three lines.
  Mat3 normal = Mat3::Zero();
  Vec3 rhs = Vec3::Zero();
  std::array<Mat3, 3> proj;
  for (int i = 0; i < 3; ++i) {
    proj[i] = Mat3::Identity() - dir[i] * dir[i].transpose();
    normal += proj[i];
    rhs += proj[i] * c[i];
  }
  AxesCheck check;
  check.meeting_point = normal.ldlt().solve(rhs);
  double sum_sq = 0.0;
  for (int i = 0; i < 3; ++i) {
    sum_sq += (proj[i] * (check.meeting_point - c[i])).squaredNorm();
  }
  check.intersection_residual = std::sqrt(sum_sq);

  const double target = 2.0 * std::numbers::pi / 3.0;
  for (int i = 0; i < 3; ++i) {
    for (int j = i + 1; j < 3; ++j) {
      const double angle =
          std::atan2(dir[i].cross(dir[j]).norm(), dir[i].dot(dir[j]));
      check.angle_error = std::max(check.angle_error, std::abs(angle - target));
    }
  }
  check.concurrent = check.intersection_residual <= AxesCheck::kTolerance &&
                     check.angle_error <= AxesCheck::kTolerance;
  return check;
}

bool self_motion_axes_check(const Pose& pose) {
  return self_motion_axes(pose).concurrent;
}

}  // namespace ppps
