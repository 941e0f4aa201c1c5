/**
 * @file  model.hpp
 * @brief Fixed geometry of the delta-based 3-PPPS robot, the platform point
 *        map and the six constraint residuals used by all solvers.
 *
 * Leg i carries a frame rotated about world z by 0, 2pi/3 and -2pi/3. In that
 * frame the spherical joint centre C_i has coordinates (rho_ix, rho_iy,
 * rho_iz); rho_iy and rho_iz are actuated, rho_ix is passive.
 */

#pragma once

#include "ppps/types.hpp"

#include <array>

namespace ppps {

using PlatformPoints = std::array<Vec3, 3>;
using Residuals = Eigen::Matrix<double, 6, 1>;

/// Base anchors, platform vertices (moving frame, edge length 1) and leg-frame
/// angles. A single constant instance exists; see robot_geometry().
struct RobotGeometry {
  std::array<Vec3, 3> base_anchors;
  std::array<Vec3, 3> platform_vertices;
  std::array<double, 3> leg_frame_angles;

  /// Planar rotation about z mapping leg-local axes to world axes.
  Mat3 leg_frame_rotation(int leg) const;
};

const RobotGeometry& robot_geometry();

Mat3 rotation_matrix(const UnitQuaternion& q);

/// C_i = R V_i + P for the three platform vertices.
PlatformPoints platform_points(const Pose& pose);

/// Left-minus-right values of the six constraint equations, top to bottom:
///   0: rho1y - y
///   1: rho1z - z
///   2: (2 q1 q4 - x) sqrt3 + 2 q1^2 + 3 q2^2 - q3^2 - y - 2 rho2y - 1
///   3: -sqrt3 q1 q3 + sqrt3 q2 q4 - q1 q2 - q3 q4 + rho2z - z
///   4: (2 q1 q4 + x) sqrt3 - 2 q1^2 - 3 q2^2 + q3^2 - y - 2 rho3y + 1
///   5: -sqrt3 q1 q3 + sqrt3 q2 q4 + q1 q2 + q3 q4 + rho3z - z
Residuals constraint_residuals(const Pose& pose, const ActuatedJoints& joints);

/// Maximum absolute residual.
double max_residual(const Pose& pose, const ActuatedJoints& joints);

/// World point -> (rho_ix, rho_iy, rho_iz) in the frame of leg 1, 2 or 3.
Vec3 leg_local_coordinates(const Vec3& point, int leg);

/// (rho_ix, rho_iy, rho_iz) of leg 1, 2 or 3 -> world point.
Vec3 leg_world_point(const Vec3& local, int leg);

/// World direction of the passive prismatic axis (leg-local x) of a leg.
Vec3 passive_axis_direction(int leg);

}  // namespace ppps
