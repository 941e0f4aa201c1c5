/**
 * @file  types.hpp
 * @brief Value types shared by every kinematics routine: orientation,
 *        platform pose, actuated and passive joint values, and the error type.
 */

#pragma once

#include <Eigen/Core>

#include <array>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace ppps {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;
using Vec4 = Eigen::Vector4d;

enum class ErrorKind { InvalidInput, NotPlanar, Degenerate, NotSelfMotion };

std::string_view to_string(ErrorKind kind);

/// Domain error raised by the solvers. Carries named numeric diagnostics so
/// callers (and the CLI) can report how far the input was from acceptable.
class KinematicsError : public std::runtime_error {
 public:
  using Diagnostics = std::vector<std::pair<std::string, double>>;

  KinematicsError(ErrorKind kind, const std::string& message,
                  Diagnostics diagnostics = {});

  ErrorKind kind() const noexcept { return kind_; }
  const Diagnostics& diagnostics() const noexcept { return diagnostics_; }

 private:
  ErrorKind kind_;
  Diagnostics diagnostics_;
};

/// Orientation as a unit quaternion (q1 scalar part, q2..q4 vector part).
///
/// Always normalized and sign-canonical: q1 > 0, or, when |q1| <= 1e-12, the
/// first component of (q2, q3, q4) whose magnitude exceeds 1e-12 is positive.
/// q and -q describe the same rotation and map to the same representative.
class UnitQuaternion {
 public:
  static constexpr double kZeroTolerance = 1e-12;
  /// Inputs whose norm differs from 1 by more than this are rejected.
  static constexpr double kRejectTolerance = 1e-6;

  UnitQuaternion() = default;

  /// Validating constructor for caller-supplied components.
  /// Throws KinematicsError(InvalidInput) on non-finite or non-unit input.
  static UnitQuaternion from_components(double q1, double q2, double q3,
                                        double q4);

  /// Normalizes any finite nonzero 4-vector (solver iterates, sums).
  static UnitQuaternion normalized(const Vec4& raw);

  /// Rotation by `angle` radians about `axis` (need not be unit length).
  static UnitQuaternion from_axis_angle(const Vec3& axis, double angle);

  double q1() const { return q_[0]; }
  double q2() const { return q_[1]; }
  double q3() const { return q_[2]; }
  double q4() const { return q_[3]; }
  const Vec4& coeffs() const { return q_; }

  /// Hamilton product, canonicalized.
  UnitQuaternion operator*(const UnitQuaternion& rhs) const;

  friend bool operator==(const UnitQuaternion& a, const UnitQuaternion& b) {
    return a.q_ == b.q_;
  }

 private:
  explicit UnitQuaternion(const Vec4& q) : q_(q) {}

  Vec4 q_{1.0, 0.0, 0.0, 0.0};
};

/// Sign canonicalization of a (not necessarily unit) 4-vector.
Vec4 canonical_sign(const Vec4& q);

/// Angle on the unit 3-sphere between q and the nearer of {q', -q'}.
double quaternion_geodesic(const UnitQuaternion& a, const UnitQuaternion& b);

/// Platform pose: reference point P (which carries vertex V1) and orientation.
/// Lengths are in units of the platform edge.
struct Pose {
  Pose() = default;
  Pose(const Vec3& p, const UnitQuaternion& q);
  Pose(double x, double y, double z, const UnitQuaternion& q);

  double x() const { return position.x(); }
  double y() const { return position.y(); }
  double z() const { return position.z(); }

  Vec3 position{Vec3::Zero()};
  UnitQuaternion orientation;
};

/// Position Euclidean distance plus quaternion geodesic angle.
double pose_distance(const Pose& a, const Pose& b);

/// The six actuated prismatic displacements, in constraint-equation order.
struct ActuatedJoints {
  double rho1y = 0.0;
  double rho1z = 0.0;
  double rho2y = 0.0;
  double rho2z = 0.0;
  double rho3y = 0.0;
  double rho3z = 0.0;

  std::array<double, 6> as_array() const {
    return {rho1y, rho1z, rho2y, rho2z, rho3y, rho3z};
  }
  static ActuatedJoints from_array(const std::array<double, 6>& v) {
    return {v[0], v[1], v[2], v[3], v[4], v[5]};
  }
  bool finite() const;

  friend bool operator==(const ActuatedJoints&,
                         const ActuatedJoints&) = default;
};

/// Actuated joints plus the three passive prismatic values.
struct FullJointState {
  ActuatedJoints actuated;
  double rho1x = 0.0;
  double rho2x = 0.0;
  double rho3x = 0.0;

  /// Largest deviation of the pairwise attachment-point distances from 1.
  /// Zero (to rounding) for states produced from a pose.
  double rigidity_error() const;
};

}  // namespace ppps
