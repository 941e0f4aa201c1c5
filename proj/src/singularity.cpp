#include "ppps/singularity.hpp"

#include "ppps/kinematics.hpp"

#include <Eigen/LU>

#include <cmath>
#include <numbers>
#include <random>

namespace ppps {

namespace {

constexpr double kSqrt3 = std::numbers::sqrt3;

}  // namespace

Eigen::Matrix<double, 4, 3> angular_to_quaternion_rate(const UnitQuaternion& q) {
  const double w = q.q1();
  const Vec3 v(q.q2(), q.q3(), q.q4());
  Mat3 skew;
  skew << 0.0, -v.z(), v.y(), v.z(), 0.0, -v.x(), -v.y(), v.x(), 0.0;
  Eigen::Matrix<double, 4, 3> l;
  l.row(0) = -0.5 * v.transpose();
  l.bottomRows<3>() = 0.5 * (w * Mat3::Identity() - skew);
  return l;
}

VelocityModel velocity_model(const Pose& pose) {
  const UnitQuaternion& q = pose.orientation;
  const double q1 = q.q1(), q2 = q.q2(), q3 = q.q3(), q4 = q.q4();

  // Partial derivatives of the residuals with respect to (x, y, z).
  Eigen::Matrix<double, 6, 3> d_position;
  d_position << 0.0, -1.0, 0.0,  //
      0.0, 0.0, -1.0,            //
      -kSqrt3, -1.0, 0.0,        //
      0.0, 0.0, -1.0,            //
      kSqrt3, -1.0, 0.0,         //
      0.0, 0.0, -1.0;

  // ... and with respect to (q1, q2, q3, q4).
  Eigen::Matrix<double, 6, 4> d_quaternion;
  d_quaternion.topRows<2>().setZero();
  d_quaternion.row(2) << 2 * kSqrt3 * q4 + 4 * q1, 6 * q2, -2 * q3,
      2 * kSqrt3 * q1;
  d_quaternion.row(3) << -kSqrt3 * q3 - q2, kSqrt3 * q4 - q1,
      -kSqrt3 * q1 - q4, kSqrt3 * q2 - q3;
  d_quaternion.row(4) << 2 * kSqrt3 * q4 - 4 * q1, -6 * q2, 2 * q3,
      2 * kSqrt3 * q1;
  d_quaternion.row(5) << -kSqrt3 * q3 + q2, kSqrt3 * q4 + q1,
      -kSqrt3 * q1 + q4, kSqrt3 * q2 + q3;

  VelocityModel m;
  m.A.leftCols<3>() = d_position;
  m.A.rightCols<3>() = d_quaternion * angular_to_quaternion_rate(q);
  m.B = Vec6(1.0, 1.0, -2.0, 1.0, -2.0, 1.0).asDiagonal();
  return m;
}

VelocityCheck finite_difference_velocity_check(const Pose& pose,
                                               const Vec6& twist, double step) {
  const Vec3 v = twist.head<3>();
  const Vec3 omega = twist.tail<3>();
  auto moved = [&](double s) {
    const double angle = s * omega.norm();
    const UnitQuaternion turn = angle == 0.0
                                    ? UnitQuaternion()
                                    : UnitQuaternion::from_axis_angle(omega, angle);
    return Pose(pose.position + s * v, turn * pose.orientation);
  };
  const auto plus = inverse_kinematics(moved(step)).actuated.as_array();
  const auto minus = inverse_kinematics(moved(-step)).actuated.as_array();

  VelocityCheck check;
  check.twist = twist;
  for (int i = 0; i < 6; ++i) {
    check.joint_rates[i] = (plus[i] - minus[i]) / (2.0 * step);
  }
  const VelocityModel m = velocity_model(pose);
  check.residual = (m.A * twist + m.B * check.joint_rates).cwiseAbs().maxCoeff();
  return check;
}

std::vector<Vec6> random_twists(int count, unsigned long long seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  std::vector<Vec6> out(static_cast<std::size_t>(std::max(count, 0)));
  for (Vec6& t : out) {
    for (int i = 0; i < 6; ++i) t[i] = unit(rng);
  }
  return out;
}

std::array<double, 3> singularity_factors(const UnitQuaternion& q) {
  const double q1 = q.q1(), q2 = q.q2(), q3 = q.q3(), q4 = q.q4();
  return {q1 * q1 - q2 * q2 - q3 * q3 + q4 * q4, q1 - q4, q1 + q4};
}

double factored_singularity(const UnitQuaternion& q) {
  const auto f = singularity_factors(q);
  return f[0] * f[1] * f[2];
}

std::array<double, 2> eliminated_factors(double q2, double q3, double q4) {
  return {q2 * q2 + q3 * q3 + 2 * q4 * q4 - 1.0, 2 * q2 * q2 + 2 * q3 * q3 - 1.0};
}

EliminatedEquivalence eliminated_equivalence_check(const UnitQuaternion& q) {
  const auto e = eliminated_factors(q.q2(), q.q3(), q.q4());
  return {factored_singularity(q), e[0] * e[1]};
}

std::array<double, 6> selfmotion_locus_residuals(const UnitQuaternion& q) {
  const double q2 = q.q2(), q3 = q.q3(), q4 = q.q4();
  const double ring = q2 * q2 + q3 * q3 - 1.0;
  return {q2 * q4,
          q3 * q4,
          q2 * ring,
          q3 * ring,
          q4 * q4 * q4 - q4,
          q2 * q2 * q2 * q2 + (q3 * q3 + q4 * q4 - 1.0) * q2 * q2 +
              q3 * q3 * q4 * q4};
}

SingularityReport singularity_report(const Pose& pose) {
  const VelocityModel m = velocity_model(pose);
  const UnitQuaternion& q = pose.orientation;
  SingularityReport r;
  r.det_a = m.A.determinant();
  r.det_b = m.B.determinant();
  r.factor_values = singularity_factors(q);
  r.factored_value =
      r.factor_values[0] * r.factor_values[1] * r.factor_values[2];
  r.eliminated_factors = eliminated_factors(q.q2(), q.q3(), q.q4());
  r.is_singular = std::abs(r.factored_value) <= SingularityReport::kTolerance;
  r.self_motion_locus_residuals = selfmotion_locus_residuals(q);
  if (std::abs(r.factored_value) > 0.05) r.det_ratio = r.det_a / r.factored_value;
  return r;
}

std::string_view to_string(Surface surface) {
  switch (surface) {
    case Surface::Cylinder:
      return "cylinder";
    case Surface::Ellipsoid:
      return "ellipsoid";
    case Surface::SelfMotionCircle:
      return "selfmotion_circle";
  }
  return "unknown";
}

double surface_equation(const SurfacePoint& p) {
  const auto e = eliminated_factors(p.q2, p.q3, p.q4);
  switch (p.surface) {
    case Surface::Cylinder:
      return e[1];
    case Surface::Ellipsoid:
      return e[0];
    case Surface::SelfMotionCircle:
      return std::max(std::abs(p.q2 * p.q2 + p.q3 * p.q3 - 1.0),
                      std::abs(p.q4));
  }
  return INFINITY;
}

std::vector<SurfacePoint> sample_singularity_surfaces(int resolution,
                                                      Execution execution) {
  if (resolution < 8) {
    throw KinematicsError(ErrorKind::InvalidInput,
                          "surface resolution must be at least 8",
                          {{"resolution", static_cast<double>(resolution)}});
  }
  const std::size_t n = static_cast<std::size_t>(resolution);
  const double two_pi = 2.0 * std::numbers::pi;
  const double half_sqrt2 = std::numbers::sqrt2 / 2.0;

  const std::size_t cylinder = (n + 1) * n;
  const std::size_t ellipsoid = 2 + (n - 1) * n;
  const std::size_t circle = n;
  std::vector<SurfacePoint> points(cylinder + ellipsoid + circle);

  parallel_for(points.size(), execution, [&](std::size_t idx) {
    SurfacePoint& p = points[idx];
    if (idx < cylinder) {
      const std::size_t k = idx / n, m = idx % n;
      const double t = two_pi * static_cast<double>(m) / resolution;
      p.surface = Surface::Cylinder;
      p.q2 = half_sqrt2 * std::cos(t);
      p.q3 = half_sqrt2 * std::sin(t);
      p.q4 = half_sqrt2 * (-1.0 + 2.0 * static_cast<double>(k) / resolution);
      return;
    }
    idx -= cylinder;
    if (idx < ellipsoid) {
      p.surface = Surface::Ellipsoid;
      if (idx == 0 || idx == ellipsoid - 1) {
        p.q4 = (idx == 0 ? 1.0 : -1.0) * half_sqrt2;
        return;
      }
      const std::size_t i = (idx - 1) / n + 1, m = (idx - 1) % n;
      const double polar = std::numbers::pi * static_cast<double>(i) / resolution;
      const double t = two_pi * static_cast<double>(m) / resolution;
      p.q2 = std::sin(polar) * std::cos(t);
      p.q3 = std::sin(polar) * std::sin(t);
      p.q4 = half_sqrt2 * std::cos(polar);
      return;
    }
    idx -= ellipsoid;
    const double t = two_pi * static_cast<double>(idx) / resolution;
    p.surface = Surface::SelfMotionCircle;
    p.q2 = std::cos(t);
    p.q3 = std::sin(t);
    p.q4 = 0.0;
  });
  return points;
}

}  // namespace ppps
