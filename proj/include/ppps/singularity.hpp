/**
 * @file  singularity.hpp
 * @brief Velocity model A t + B rho_dot = 0, the factored parallel-singularity
 *        condition and samplers for the singular surfaces in (q2, q3, q4).
 *
 * Twist convention: t = (v, omega) with v the world-frame velocity of P and
 * omega the world-frame angular velocity; quaternion rates follow
 * q_dot = 1/2 [0, omega] * q. Any other fixed convention multiplies A on the
 * right by a constant invertible matrix and leaves the zero set of det(A)
 * unchanged.
 */

#pragma once

#include "ppps/model.hpp"
#include "ppps/parallel.hpp"

#include <array>
#include <optional>
#include <string_view>
#include <vector>

namespace ppps {

using Mat6 = Eigen::Matrix<double, 6, 6>;
using Vec6 = Eigen::Matrix<double, 6, 1>;

inline constexpr std::string_view kTwistConvention =
    "world-frame linear velocity of P, world-frame angular velocity";

struct VelocityModel {
  Mat6 A;
  Mat6 B;
};

VelocityModel velocity_model(const Pose& pose);

struct VelocityCheck {
  Vec6 twist;
  Vec6 joint_rates;  ///< central differences of inverse kinematics
  double residual = 0.0;  ///< ||A t + B rho_dot||_inf
};

/// Moves the platform along `twist` (P + s v, exp(s omega) q), differentiates
/// inverse kinematics with step `step` and evaluates the velocity relation.
VelocityCheck finite_difference_velocity_check(const Pose& pose,
                                               const Vec6& twist,
                                               double step = 1e-6);

/// `count` twists with components uniform in [-1, 1], reproducible by seed.
std::vector<Vec6> random_twists(int count, unsigned long long seed);

/// 4x3 map from world angular velocity to quaternion rates at q.
Eigen::Matrix<double, 4, 3> angular_to_quaternion_rate(const UnitQuaternion& q);

struct SingularityReport {
  static constexpr double kTolerance = 1e-10;

  double det_a = 0.0;
  double det_b = 0.0;
  /// (q1^2 - q2^2 - q3^2 + q4^2) (q1 - q4) (q1 + q4)
  double factored_value = 0.0;
  std::array<double, 3> factor_values{};
  /// (q2^2 + q3^2 + 2 q4^2 - 1), (2 q2^2 + 2 q3^2 - 1)
  std::array<double, 2> eliminated_factors{};
  bool is_singular = false;
  std::array<double, 6> self_motion_locus_residuals{};
  /// det_a / factored_value where |factored_value| > 0.05.
  std::optional<double> det_ratio;
};

SingularityReport singularity_report(const Pose& pose);

/// The three factors of the singularity condition at q.
std::array<double, 3> singularity_factors(const UnitQuaternion& q);

/// Product of singularity_factors.
double factored_singularity(const UnitQuaternion& q);

/// The two factors after eliminating q1 with the unit-norm relation.
std::array<double, 2> eliminated_factors(double q2, double q3, double q4);

struct EliminatedEquivalence {
  double factored_product = 0.0;    ///< product of the three q1 factors
  double eliminated_product = 0.0;  ///< product of the two q1-free factors
};

/// On the unit sphere, q1^2 - q2^2 - q3^2 + q4^2 = -(2q2^2 + 2q3^2 - 1) and
/// (q1 - q4)(q1 + q4) = -(q2^2 + q3^2 + 2q4^2 - 1); the two signs cancel so
/// both products are equal.
EliminatedEquivalence eliminated_equivalence_check(const UnitQuaternion& q);

/// Values of the six polynomials whose common zeros contain the self-motion
/// orientations. Note q2 = q3 = q4 = 0 is also a common zero; only the
/// intersection with the singular surfaces is the unit circle.
std::array<double, 6> selfmotion_locus_residuals(const UnitQuaternion& q);

enum class Surface { Cylinder, Ellipsoid, SelfMotionCircle };

std::string_view to_string(Surface surface);

struct SurfacePoint {
  Surface surface = Surface::Cylinder;
  double q2 = 0.0;
  double q3 = 0.0;
  double q4 = 0.0;
};

/// Implicit-equation value of a sample for its own surface.
double surface_equation(const SurfacePoint& point);

/// Cylinder 2q2^2 + 2q3^2 = 1 (angle x height, |q4| <= 1/sqrt2), ellipsoid
/// q2^2 + q3^2 + 2 q4^2 = 1 (polar x azimuth, poles emitted once) and the
/// circle q2^2 + q3^2 = 1, q4 = 0. Rows are ordered by surface, then grid.
/// Throws KinematicsError(InvalidInput) if resolution < 8.
std::vector<SurfacePoint> sample_singularity_surfaces(
    int resolution, Execution execution = Execution::Parallel);

}  // namespace ppps
