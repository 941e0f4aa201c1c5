#include "ppps/kinematics.hpp"

#include "ppps/newton.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>
#include <tuple>

namespace ppps {

namespace {

constexpr double kSqrt3 = std::numbers::sqrt3;

using Unknowns = Eigen::Matrix<double, 5, 1>;
using Jacobian = Eigen::Matrix<double, 5, 5>;

// The four constraints left after y = rho1y, z = rho1z, plus unit norm, in
// the unknowns (x, q1, q2, q3, q4).
struct ReducedSystem {
  ActuatedJoints j;

  void operator()(const Unknowns& u, Unknowns& f, Jacobian& jac) const {
    const double x = u[0], q1 = u[1], q2 = u[2], q3 = u[3], q4 = u[4];
    const double y = j.rho1y, z = j.rho1z;
    const double tilt = -kSqrt3 * q1 * q3 + kSqrt3 * q2 * q4;
    const double roll = q1 * q2 + q3 * q4;
    const double planar = 2 * q1 * q1 + 3 * q2 * q2 - q3 * q3;

    f << (2 * q1 * q4 - x) * kSqrt3 + planar - y - 2 * j.rho2y - 1.0,
        tilt - roll + j.rho2z - z,
        (2 * q1 * q4 + x) * kSqrt3 - planar - y - 2 * j.rho3y + 1.0,
        tilt + roll + j.rho3z - z,
        q1 * q1 + q2 * q2 + q3 * q3 + q4 * q4 - 1.0;

    jac << -kSqrt3, 2 * kSqrt3 * q4 + 4 * q1, 6 * q2, -2 * q3, 2 * kSqrt3 * q1,
        0.0, -kSqrt3 * q3 - q2, kSqrt3 * q4 - q1, -kSqrt3 * q1 - q4,
        kSqrt3 * q2 - q3,  //
        kSqrt3, 2 * kSqrt3 * q4 - 4 * q1, -6 * q2, 2 * q3, 2 * kSqrt3 * q1,
        0.0, -kSqrt3 * q3 + q2, kSqrt3 * q4 + q1, -kSqrt3 * q1 + q4,
        kSqrt3 * q2 + q3,  //
        0.0, 2 * q1, 2 * q2, 2 * q3, 2 * q4;
  }
};

Unknowns sign_twin(const Unknowns& u) {
  Unknowns t = -u;
  t[0] = u[0];
  return t;
}

struct RootCollector {
  const ActuatedJoints& joints;
  const SolverOptions& options;
  bool self_motion;

  std::vector<Pose> accepted;
  std::vector<Pose> on_circle;
  std::vector<Unknowns> deflated;

  enum class Verdict { New, Known, Family, Rejected };

  Verdict offer(const Unknowns& u) {
    const Vec4 raw = u.tail<4>();
    if (!raw.allFinite() || raw.norm() == 0.0) return Verdict::Rejected;
    const Pose pose(u[0], joints.rho1y, joints.rho1z,
                    UnitQuaternion::normalized(raw));
    if (max_residual(pose, joints) > options.acceptance_residual) {
      return Verdict::Rejected;
    }
    if (self_motion && on_self_motion_circle(pose.orientation)) {
      return Verdict::Family;
    }
    for (const Pose& p : accepted) {
      if (pose_distance(p, pose) <= options.distinct_distance) {
        return Verdict::Known;
      }
    }
    accepted.push_back(pose);
    deflated.push_back(u);
    deflated.push_back(sign_twin(u));
    return Verdict::New;
  }
};

bool pose_less(const Pose& a, const Pose& b) {
  const Vec4& qa = a.orientation.coeffs();
  const Vec4& qb = b.orientation.coeffs();
  return std::tie(a.position.x(), qa[0], qa[1], qa[2], qa[3]) <
         std::tie(b.position.x(), qb[0], qb[1], qb[2], qb[3]);
}

template <typename T>
T parse_number(std::string_view key, std::string_view text) {
  T value{};
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end) {
    throw KinematicsError(ErrorKind::InvalidInput,
                          "bad value '" + std::string(text) + "' for option '" +
                              std::string(key) + "'");
  }
  return value;
}

}  // namespace

std::string_view to_string(DKKind kind) {
  switch (kind) {
    case DKKind::FiniteSolutions:
      return "FiniteSolutions";
    case DKKind::SelfMotion:
      return "SelfMotion";
    case DKKind::NoSolution:
      return "NoSolution";
  }
  return "Unknown";
}

void SolverOptions::set(std::string_view key_in, std::string_view value) {
  std::string key(key_in);
  std::replace(key.begin(), key.end(), '-', '_');
  if (key == "max_iterations" || key == "max_iter") {
    max_iterations = parse_number<int>(key, value);
  } else if (key == "tolerance" || key == "residual_tolerance") {
    residual_tolerance = parse_number<double>(key, value);
  } else if (key == "divergence" || key == "divergence_threshold") {
    divergence_threshold = parse_number<double>(key, value);
  } else if (key == "seed_density") {
    seed_density = parse_number<int>(key, value);
  } else if (key == "max_deflation_restarts") {
    max_deflation_restarts = parse_number<int>(key, value);
  } else if (key == "distinct_distance") {
    distinct_distance = parse_number<double>(key, value);
  } else if (key == "acceptance_residual") {
    acceptance_residual = parse_number<double>(key, value);
  } else if (key == "execution") {
    if (value == "serial") {
      execution = Execution::Serial;
    } else if (value == "parallel") {
      execution = Execution::Parallel;
    } else {
      throw KinematicsError(ErrorKind::InvalidInput,
                            "execution must be 'serial' or 'parallel'");
    }
  } else {
    throw KinematicsError(ErrorKind::InvalidInput,
                          "unknown solver option '" + key + "'");
  }
  if (max_iterations < 1 || !(residual_tolerance > 0.0) ||
      !(divergence_threshold > 0.0) || seed_density < 0 ||
      max_deflation_restarts < 0 || !(distinct_distance > 0.0) ||
      !(acceptance_residual > 0.0)) {
    throw KinematicsError(ErrorKind::InvalidInput,
                          "solver option '" + key + "' out of range");
  }
}

FullJointState inverse_kinematics(const Pose& pose) {
  const double x = pose.x(), y = pose.y(), z = pose.z();
  const UnitQuaternion& q = pose.orientation;
  const double q1 = q.q1(), q2 = q.q2(), q3 = q.q3(), q4 = q.q4();
  const double tilt = -kSqrt3 * q1 * q3 + kSqrt3 * q2 * q4;
  const double roll = q1 * q2 + q3 * q4;
  const double planar = 2 * q1 * q1 + 3 * q2 * q2 - q3 * q3;

  FullJointState s;
  s.actuated.rho1y = y;
  s.actuated.rho1z = z;
  s.actuated.rho2y = 0.5 * ((2 * q1 * q4 - x) * kSqrt3 + planar - y - 1.0);
  s.actuated.rho2z = z - tilt + roll;
  s.actuated.rho3y = 0.5 * ((2 * q1 * q4 + x) * kSqrt3 - planar - y + 1.0);
  s.actuated.rho3z = z - tilt - roll;

  const PlatformPoints c = platform_points(pose);
  s.rho1x = leg_local_coordinates(c[0], 1).x();
  s.rho2x = leg_local_coordinates(c[1], 2).x();
  s.rho3x = leg_local_coordinates(c[2], 3).x();
  return s;
}

std::vector<Unknowns> dk_seeds(const SolverOptions& options) {
  // F is even in q, so q and -q seeds are redundant: q1 >= 0 throughout.
  std::vector<Unknowns> seeds;
  for (double x : {-2.0, 0.0, 2.0}) {
    for (int bits = 0; bits < 8; ++bits) {
      Unknowns u;
      u << x, 0.5, (bits & 4) ? -0.5 : 0.5, (bits & 2) ? -0.5 : 0.5,
          (bits & 1) ? -0.5 : 0.5;
      seeds.push_back(u);
    }
    for (int axis = 1; axis <= 4; ++axis) {
      Unknowns u = Unknowns::Zero();
      u[0] = x;
      u[axis] = 1.0;
      seeds.push_back(u);
    }
  }
  Unknowns home;
  home << 1.0 / kSqrt3, 1.0, 0.0, 0.0, 0.0;
  seeds.push_back(home);
  home << -1.0 / kSqrt3, 0.0, 0.0, 0.0, 1.0;
  seeds.push_back(home);

  const int d = options.seed_density;
  if (d > 0) {
    for (int a = -d; a <= d; ++a) {
      for (int b = -d; b <= d; ++b) {
        for (int c = -d; c <= d; ++c) {
          for (int e = 0; e <= d; ++e) {
            Vec4 q(e, a, b, c);
            if (q.squaredNorm() == 0.0) continue;
            q.normalize();
            Unknowns u;
            u << 0.0, q;
            seeds.push_back(u);
          }
        }
      }
    }
  }
  return seeds;
}

DKOutcome direct_kinematics(const ActuatedJoints& joints,
                            const SolverOptions& options) {
  if (!joints.finite()) {
    throw KinematicsError(ErrorKind::InvalidInput,
                          "actuated joint values must be finite");
  }
  DKOutcome out;
  out.condition = self_motion_condition(joints);
  const bool self_motion = out.condition.holds;
  if (!self_motion &&
      out.condition.worst() <= options.near_degenerate_threshold) {
    out.conditioning_warning =
        "joint values are within " +
        std::to_string(options.near_degenerate_threshold) +
        " of the self-motion condition; the direct kinematics is "
        "ill-conditioned";
  }

  NewtonSettings settings;
  settings.max_iterations = options.max_iterations;
  settings.tolerance = options.residual_tolerance;
  settings.divergence = options.divergence_threshold;
  settings.stall_tolerance = std::max(settings.tolerance, 1e-10);

  const ReducedSystem system{joints};
  const std::vector<Unknowns> seeds = dk_seeds(options);
  out.seeds = static_cast<int>(seeds.size());

  // Phase 1: independent undeflated runs, one per seed.
  std::vector<NewtonResult<5>> first(seeds.size());
  parallel_for(seeds.size(), options.execution, [&](std::size_t i) {
    first[i] = damped_newton<5>(system, seeds[i], settings);
  });

  RootCollector roots{joints, options, self_motion, {}, {}, {}};
  int runs = static_cast<int>(seeds.size());
  for (const auto& r : first) {
    out.best_residual = std::min(out.best_residual, r.residual);
    if (r.converged()) roots.offer(r.x);
  }

  // Phase 2: sequential sweep with every known root deflated.
  for (const Unknowns& seed : seeds) {
    for (int attempt = 0; attempt <= options.max_deflation_restarts;
         ++attempt) {
      if (roots.deflated.empty()) break;
      const auto r = damped_newton<5>(
          system, seed, settings,
          std::span<const Unknowns>(roots.deflated.data(),
                                    roots.deflated.size()));
      ++runs;
      out.best_residual = std::min(out.best_residual, r.residual);
      if (!r.converged() ||
          roots.offer(r.x) != RootCollector::Verdict::New) {
        break;
      }
    }
  }

  // Phase 3: alpha = q1 q3 - q2 q4, beta = q1 q2 + q3 q4 and q1 q4 are fixed
  // by the joints, so exchanging q1 and |q4| and re-solving the linear system
  // for (q2, q3) maps a root onto a partner root. Partners can sit very close
  // to a known root near the singular surfaces, where deflation repels the
  // sweep; polishing them undeflated recovers those roots.
  for (std::size_t k = 0; k < roots.deflated.size(); k += 2) {
    const Unknowns& r = roots.deflated[k];
    const double q1 = r[1], q2 = r[2], q3 = r[3], q4 = r[4];
    const double w = q1 * q1 + q4 * q4;
    if (std::abs(q4) < 1e-8 || w < 1e-8) continue;
    const double alpha = q1 * q3 - q2 * q4;
    const double beta = q1 * q2 + q3 * q4;
    Unknowns seed;
    seed[1] = std::abs(q4);
    seed[4] = q1 * q4 / seed[1];
    seed[2] = (-seed[4] * alpha + seed[1] * beta) / w;
    seed[3] = (seed[1] * alpha + seed[4] * beta) / w;
    const double planar =
        2 * seed[1] * seed[1] + 3 * seed[2] * seed[2] - seed[3] * seed[3];
    seed[0] = (planar - 1.0 - joints.rho2y + joints.rho3y) / kSqrt3;
    const auto res = damped_newton<5>(system, seed, settings);
    ++runs;
    out.best_residual = std::min(out.best_residual, res.residual);
    if (res.converged()) roots.offer(res.x);
  }
  out.newton_runs = runs;

  std::sort(roots.accepted.begin(), roots.accepted.end(), pose_less);
  if (self_motion) {
    out.kind = DKKind::SelfMotion;
    out.self_motion_family.emplace(joints);
    out.isolated_solutions = std::move(roots.accepted);
  } else if (!roots.accepted.empty()) {
    out.kind = DKKind::FiniteSolutions;
    out.solutions = std::move(roots.accepted);
  } else {
    out.kind = DKKind::NoSolution;
  }
  return out;
}

PlanarQuadratic planar_quadratic_coefficients(const ActuatedJoints& j) {
  const double worst_z =
      std::max({std::abs(j.rho1z), std::abs(j.rho2z), std::abs(j.rho3z)});
  if (!j.finite() || worst_z > 1e-12) {
    throw KinematicsError(ErrorKind::NotPlanar,
                          "planar direct kinematics needs rho1z = rho2z = "
                          "rho3z = 0",
                          {{"max_abs_rho_z", worst_z}});
  }
  PlanarQuadratic pq;
  const double r1 = j.rho1y, r2 = j.rho2y, r3 = j.rho3y;
  pq.sum_rho_y = r1 + r2 + r3;
  pq.a = 9.0;
  pq.b = 6.0 * kSqrt3 * (r2 - r3);
  pq.c = r1 * r1 + 2 * r1 * r2 + 2 * r1 * r3 + 4 * r2 * r2 - 4 * r2 * r3 +
         4 * r3 * r3 - 3.0;
  pq.degenerate = std::abs(pq.sum_rho_y) <= PlanarQuadratic::kDegenerateTolerance;
  return pq;
}

std::vector<PlanarSolution> planar_direct_kinematics(const ActuatedJoints& j) {
  const PlanarQuadratic pq = planar_quadratic_coefficients(j);
  if (pq.degenerate) {
    throw KinematicsError(ErrorKind::Degenerate,
                          "all quadratic coefficients vanish (self-motion); "
                          "use the Cardanic family instead",
                          {{"sum_rho_y", pq.sum_rho_y}});
  }

  std::vector<double> roots;
  const double disc = pq.discriminant();
  if (std::abs(disc) <= PlanarQuadratic::kDoubleRootTolerance) {
    roots.push_back(-pq.b / (2.0 * pq.a));
  } else if (disc > 0.0) {
    const double sq = std::sqrt(disc);
    roots.push_back((-pq.b - sq) / (2.0 * pq.a));
    roots.push_back((-pq.b + sq) / (2.0 * pq.a));
  }

  // With the platform parallel to the base the orientation is a rotation by
  // phi about z; the summed and differenced leg-2/leg-3 planar constraints
  // give sin(phi) = S / sqrt3 and cos(phi) = rho2y - rho3y + sqrt3 rho1x.
  std::vector<PlanarSolution> out;
  for (double x : roots) {
    const double sin_phi = pq.sum_rho_y / kSqrt3;
    const double cos_phi = j.rho2y - j.rho3y + kSqrt3 * x;
    const double phi = std::atan2(sin_phi, cos_phi);
    const UnitQuaternion q = UnitQuaternion::normalized(
        Vec4(std::cos(0.5 * phi), 0.0, 0.0, std::sin(0.5 * phi)));
    PlanarSolution s{x, Pose(x, j.rho1y, j.rho1z, q), 0.0};
    s.max_residual = max_residual(s.pose, j);
    if (s.max_residual <= 1e-9) out.push_back(s);
  }
  return out;
}

}  // namespace ppps
