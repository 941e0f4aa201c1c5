/**
 * @file  kinematics.hpp
 * @brief Closed-form inverse kinematics, multistart deflated Newton direct
 *        kinematics, and the planar quadratic special case.
 */

#pragma once

#include "ppps/model.hpp"
#include "ppps/parallel.hpp"
#include "ppps/selfmotion.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace ppps {

FullJointState inverse_kinematics(const Pose& pose);

struct SolverOptions {
  int max_iterations = 200;
  double residual_tolerance = 1e-12;
  double divergence_threshold = 1e6;
  /// Extra seeds from a {-1, -1 + 1/d, ..., 1}^4 quaternion grid; 0 keeps the
  /// base set (8 sign patterns and 4 axes at 3 x-values, plus two homes).
  int seed_density = 0;
  /// Retries from the same seed after each newly deflated root.
  int max_deflation_restarts = 8;
  /// Roots closer than this (pose distance) are merged.
  double distinct_distance = 1e-6;
  /// A root is reported only if its max residual is at most this.
  double acceptance_residual = 1e-9;
  double near_degenerate_threshold = 1e-6;
  Execution execution = Execution::Parallel;

  /// Sets one option from a key/value pair ("max_iterations", "tolerance",
  /// "divergence", "seed_density", "max_deflation_restarts",
  /// "distinct_distance", "acceptance_residual", "execution").
  /// Throws KinematicsError(InvalidInput) on unknown keys or bad values.
  void set(std::string_view key, std::string_view value);
};

enum class DKKind { FiniteSolutions, SelfMotion, NoSolution };

std::string_view to_string(DKKind kind);

struct DKOutcome {
  DKKind kind = DKKind::NoSolution;
  /// Distinct verified poses, ordered by (x, q1); empty unless FiniteSolutions.
  std::vector<Pose> solutions;
  /// Present iff kind == SelfMotion.
  std::optional<CardanicFamily> self_motion_family;
  /// For SelfMotion only: roots found off the Cardanic circle.
  std::vector<Pose> isolated_solutions;
  /// Set when the input is within near_degenerate_threshold of the
  /// self-motion condition without satisfying it.
  std::optional<std::string> conditioning_warning;
  SelfMotionCondition condition;
  int seeds = 0;
  int newton_runs = 0;
  /// Smallest residual reached by any run (diagnostic for NoSolution).
  double best_residual = INFINITY;
};

/// Initial guesses (x, q1, q2, q3, q4) for the multistart, in fixed order.
std::vector<Eigen::Matrix<double, 5, 1>> dk_seeds(const SolverOptions& options);

DKOutcome direct_kinematics(const ActuatedJoints& joints,
                            const SolverOptions& options = {});

/// a rho1x^2 + b rho1x + c = 0 after removing the common factor
/// (rho1y + rho2y + rho3y)^2 from the planar direct-kinematics polynomial.
struct PlanarQuadratic {
  static constexpr double kDegenerateTolerance = 1e-10;
  static constexpr double kDoubleRootTolerance = 1e-12;

  double a = 9.0;
  double b = 0.0;
  double c = 0.0;
  double sum_rho_y = 0.0;
  bool degenerate = false;

  double discriminant() const { return b * b - 4.0 * a * c; }
};

/// Throws KinematicsError(NotPlanar) unless rho1z = rho2z = rho3z = 0
/// within 1e-12.
PlanarQuadratic planar_quadratic_coefficients(const ActuatedJoints& joints);

struct PlanarSolution {
  double rho1x = 0.0;
  Pose pose;
  double max_residual = 0.0;
};

/// Real roots of the planar quadratic lifted to poses (z = 0, rotation about
/// z). Throws NotPlanar, or Degenerate when the self-motion condition holds.
std::vector<PlanarSolution> planar_direct_kinematics(
    const ActuatedJoints& joints);

}  // namespace ppps
