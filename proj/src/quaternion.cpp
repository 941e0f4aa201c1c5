#include "ppps/types.hpp"

#include "ppps/model.hpp"

#include <cmath>

namespace ppps {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidInput:
      return "InvalidInput";
    case ErrorKind::NotPlanar:
      return "NotPlanar";
    case ErrorKind::Degenerate:
      return "Degenerate";
    case ErrorKind::NotSelfMotion:
      return "NotSelfMotion";
  }
  return "Unknown";
}

KinematicsError::KinematicsError(ErrorKind kind, const std::string& message,
                                 Diagnostics diagnostics)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message),
      kind_(kind),
      diagnostics_(std::move(diagnostics)) {}

Vec4 canonical_sign(const Vec4& q) {
  for (int i = 0; i < 4; ++i) {
    if (std::abs(q[i]) > UnitQuaternion::kZeroTolerance) {
      return q[i] < 0.0 ? Vec4(-q) : q;
    }
  }
  return q;
}

UnitQuaternion UnitQuaternion::from_components(double q1, double q2, double q3,
                                               double q4) {
  const Vec4 raw(q1, q2, q3, q4);
  if (!raw.allFinite()) {
    throw KinematicsError(ErrorKind::InvalidInput,
                          "quaternion has non-finite components");
  }
  const double norm = raw.norm();
  if (std::abs(norm - 1.0) > kRejectTolerance) {
    throw KinematicsError(ErrorKind::InvalidInput,
                          "quaternion is not of unit norm",
                          {{"norm", norm}});
  }
  return UnitQuaternion(canonical_sign(raw / norm));
}

UnitQuaternion UnitQuaternion::normalized(const Vec4& raw) {
  const double norm = raw.norm();
  if (!raw.allFinite() || norm == 0.0) {
    throw KinematicsError(ErrorKind::InvalidInput,
                          "cannot normalize a zero or non-finite quaternion");
  }
  return UnitQuaternion(canonical_sign(raw / norm));
}

UnitQuaternion UnitQuaternion::from_axis_angle(const Vec3& axis,
                                               double angle) {
  const double n = axis.norm();
  if (!(n > 0.0) || !std::isfinite(angle)) {
    throw KinematicsError(ErrorKind::InvalidInput, "invalid axis-angle");
  }
  const Vec3 u = axis / n;
  const double s = std::sin(0.5 * angle);
  return normalized(Vec4(std::cos(0.5 * angle), s * u.x(), s * u.y(),
                         s * u.z()));
}

UnitQuaternion UnitQuaternion::operator*(const UnitQuaternion& rhs) const {
  const double a1 = q_[0], a2 = q_[1], a3 = q_[2], a4 = q_[3];
  const double b1 = rhs.q_[0], b2 = rhs.q_[1], b3 = rhs.q_[2],
               b4 = rhs.q_[3];
  return normalized(Vec4(a1 * b1 - a2 * b2 - a3 * b3 - a4 * b4,
                         a1 * b2 + a2 * b1 + a3 * b4 - a4 * b3,
                         a1 * b3 - a2 * b4 + a3 * b1 + a4 * b2,
                         a1 * b4 + a2 * b3 - a3 * b2 + a4 * b1));
}

double quaternion_geodesic(const UnitQuaternion& a, const UnitQuaternion& b) {
  Vec4 other = b.coeffs();
  if (a.coeffs().dot(other) < 0.0) other = -other;
  // atan2 form keeps full precision for nearly equal quaternions.
  return 2.0 * std::atan2((a.coeffs() - other).norm(),
                          (a.coeffs() + other).norm());
}

Pose::Pose(const Vec3& p, const UnitQuaternion& q)
    : position(p), orientation(q) {
  if (!p.allFinite()) {
    throw KinematicsError(ErrorKind::InvalidInput,
                          "pose position is not finite");
  }
}

Pose::Pose(double x, double y, double z, const UnitQuaternion& q)
    : Pose(Vec3(x, y, z), q) {}

double pose_distance(const Pose& a, const Pose& b) {
  return (a.position - b.position).norm() +
         quaternion_geodesic(a.orientation, b.orientation);
}

bool ActuatedJoints::finite() const {
  for (double v : as_array()) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

double FullJointState::rigidity_error() const {
  const PlatformPoints c = {
      leg_world_point(Vec3(rho1x, actuated.rho1y, actuated.rho1z), 1),
      leg_world_point(Vec3(rho2x, actuated.rho2y, actuated.rho2z), 2),
      leg_world_point(Vec3(rho3x, actuated.rho3y, actuated.rho3z), 3)};
  double worst = 0.0;
  for (int i = 0; i < 3; ++i) {
    for (int j = i + 1; j < 3; ++j) {
      worst = std::max(worst, std::abs((c[i] - c[j]).norm() - 1.0));
    }
  }
  return worst;
}

}  // namespace ppps
