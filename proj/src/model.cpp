#include "ppps/model.hpp"

#include <cmath>
#include <numbers>

namespace ppps {

namespace {

constexpr double kSqrt3 = std::numbers::sqrt3;

void check_leg(int leg) {
  if (leg < 1 || leg > 3) {
    throw KinematicsError(ErrorKind::InvalidInput, "leg index must be 1, 2 or 3",
                          {{"leg", static_cast<double>(leg)}});
  }
}

RobotGeometry make_geometry() {
  RobotGeometry g;
  g.base_anchors = {Vec3(2.0, 0.0, 0.0), Vec3(-1.0, kSqrt3, 0.0),
                    Vec3(-1.0, -kSqrt3, 0.0)};
  g.platform_vertices = {Vec3(0.0, 0.0, 0.0), Vec3(-kSqrt3 / 2.0, 0.5, 0.0),
                         Vec3(-kSqrt3 / 2.0, -0.5, 0.0)};
  g.leg_frame_angles = {0.0, 2.0 * std::numbers::pi / 3.0,
                        -2.0 * std::numbers::pi / 3.0};
  return g;
}

// Exact cos/sin of the leg-frame angles, so the leg maps reproduce the
// printed expressions without trigonometric rounding.
struct PlanarRotation {
  double c;
  double s;
};

PlanarRotation leg_rotation(int leg) {
  switch (leg) {
    case 2:
      return {-0.5, kSqrt3 / 2.0};
    case 3:
      return {-0.5, -kSqrt3 / 2.0};
    default:
      return {1.0, 0.0};
  }
}

}  // namespace

const RobotGeometry& robot_geometry() {
  static const RobotGeometry geometry = make_geometry();
  return geometry;
}

Mat3 RobotGeometry::leg_frame_rotation(int leg) const {
  check_leg(leg);
  const auto [c, s] = leg_rotation(leg);
  Mat3 r;
  r << c, -s, 0.0, s, c, 0.0, 0.0, 0.0, 1.0;
  return r;
}

Mat3 rotation_matrix(const UnitQuaternion& q) {
  const double q1 = q.q1(), q2 = q.q2(), q3 = q.q3(), q4 = q.q4();
  Mat3 r;
  r << 2 * q1 * q1 + 2 * q2 * q2 - 1, -2 * q1 * q4 + 2 * q2 * q3,
      2 * q1 * q3 + 2 * q2 * q4,  //
      2 * q1 * q4 + 2 * q2 * q3, 2 * q1 * q1 + 2 * q3 * q3 - 1,
      -2 * q1 * q2 + 2 * q3 * q4,  //
      -2 * q1 * q3 + 2 * q2 * q4, 2 * q1 * q2 + 2 * q3 * q4,
      2 * q1 * q1 + 2 * q4 * q4 - 1;
  return r;
}

PlatformPoints platform_points(const Pose& pose) {
  const Mat3 r = rotation_matrix(pose.orientation);
  const auto& v = robot_geometry().platform_vertices;
  return {r * v[0] + pose.position, r * v[1] + pose.position,
          r * v[2] + pose.position};
}

Residuals constraint_residuals(const Pose& pose, const ActuatedJoints& j) {
  const double x = pose.x(), y = pose.y(), z = pose.z();
  const UnitQuaternion& q = pose.orientation;
  const double q1 = q.q1(), q2 = q.q2(), q3 = q.q3(), q4 = q.q4();

  const double tilt = -kSqrt3 * q1 * q3 + kSqrt3 * q2 * q4;
  const double roll = q1 * q2 + q3 * q4;
  const double planar = 2 * q1 * q1 + 3 * q2 * q2 - q3 * q3;

  Residuals r;
  r << j.rho1y - y,  //
      j.rho1z - z,   //
      (2 * q1 * q4 - x) * kSqrt3 + planar - y - 2 * j.rho2y - 1.0,
      tilt - roll + j.rho2z - z,
      (2 * q1 * q4 + x) * kSqrt3 - planar - y - 2 * j.rho3y + 1.0,
      tilt + roll + j.rho3z - z;
  return r;
}

double max_residual(const Pose& pose, const ActuatedJoints& joints) {
  return constraint_residuals(pose, joints).cwiseAbs().maxCoeff();
}

Vec3 leg_local_coordinates(const Vec3& point, int leg) {
  check_leg(leg);
  const auto [c, s] = leg_rotation(leg);
  // Inverse of the leg rotation is its transpose.
  return Vec3(c * point.x() + s * point.y(), -s * point.x() + c * point.y(),
              point.z());
}

Vec3 leg_world_point(const Vec3& local, int leg) {
  check_leg(leg);
  const auto [c, s] = leg_rotation(leg);
  return Vec3(c * local.x() - s * local.y(), s * local.x() + c * local.y(),
              local.z());
}

Vec3 passive_axis_direction(int leg) {
  return leg_world_point(Vec3::UnitX(), leg);
}

}  // namespace ppps
