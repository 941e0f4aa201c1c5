// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
// failure.

#include "ppps/cli.hpp"
#include "ppps/io.hpp"
#include "ppps/kinematics.hpp"
#include "ppps/selfmotion.hpp"
#include "ppps/singularity.hpp"
#include "oracles.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>

using namespace ppps;

namespace {

constexpr double kSqrt3 = std::numbers::sqrt3;

struct Verdict {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) {
      pass = false;
      detail = what;
    }
  }
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

bool contains(const std::vector<Pose>& poses, const Pose& target, double tol) {
  for (const Pose& p : poses) {
    if ((p.position - target.position).norm() <= tol &&
        quaternion_geodesic(p.orientation, target.orientation) <= tol) {
      return true;
    }
  }
  return false;
}

Vec4 slerp(const Vec4& a, const Vec4& b, double t) {
  const double omega = std::acos(std::clamp(a.dot(b), -1.0, 1.0));
  return (std::sin((1 - t) * omega) * a + std::sin(t * omega) * b) / std::sin(omega);
}

Verdict home_position() {
  Verdict v;
  const auto joints =
      inverse_kinematics(Pose(1.0 / kSqrt3, 0, 0, UnitQuaternion())).actuated.as_array();
  double worst = 0;
  for (double j : joints) worst = std::max(worst, std::abs(j));
  v.require(worst <= 1e-12, "IK joints off zero by " + fmt(worst));
  const DKOutcome o = direct_kinematics({});
  v.require(o.kind == DKKind::SelfMotion,
            "DK of zero joints returned " + std::string(to_string(o.kind)));
  v.detail = v.pass ? "max |joint| " + fmt(worst) : v.detail;
  return v;
}

Verdict cardanic_family_validity() {
  Verdict v;
  const auto members = CardanicFamily({}).sample(360);
  v.require(members.size() == 360, "wrong member count");
  double worst_res = 0, worst_circle = 0, worst_joint = 0, worst_axes = 0;
  for (const FamilyMember& m : members) {
    const UnitQuaternion& q = m.pose.orientation;
    worst_res = std::max(worst_res, max_residual(m.pose, {}));
    worst_circle = std::max({worst_circle, std::abs(q.q1()), std::abs(q.q4()),
                             std::abs(q.q2() * q.q2() + q.q3() * q.q3() - 1.0)});
    for (double j : inverse_kinematics(m.pose).actuated.as_array()) {
      worst_joint = std::max(worst_joint, std::abs(j));
    }
    const AxesCheck a = self_motion_axes(m.pose);
    worst_axes = std::max({worst_axes, a.intersection_residual, a.angle_error});
    v.require(a.concurrent, "axes not concurrent at theta " + fmt(m.theta));
  }
  v.require(worst_res <= 1e-10, "constraint residual " + fmt(worst_res));
  v.require(worst_circle <= 1e-12, "orientation off the circle by " + fmt(worst_circle));
  v.require(worst_joint <= 1e-10, "IK joints off zero by " + fmt(worst_joint));
  v.require(worst_axes <= 1e-8, "axes check residual " + fmt(worst_axes));
  if (v.pass) {
    v.detail = "residual " + fmt(worst_res) + ", circle " + fmt(worst_circle) + ", axes " +
               fmt(worst_axes);
  }
  return v;
}

Verdict roundtrip() {
  Verdict v;
  std::mt19937_64 rng(20260101);
  int recovered = 0;
  for (int i = 0; i < 1000; ++i) {
    const Pose p = oracle::random_nonsingular_pose(rng, 0.05);
    const DKOutcome o = direct_kinematics(inverse_kinematics(p).actuated);
    const bool ok = contains(o.solutions, p, 1e-8);
    recovered += ok;
    v.require(ok, "pose " + std::to_string(i) + " not recovered");
  }
  if (v.pass) v.detail = std::to_string(recovered) + "/1000 recovered";
  return v;
}

Verdict singular_zero_sets() {
  Verdict v;
  std::mt19937_64 rng(4);
  const int samples = 2000;
  int crossings = 0;
  double worst_shift = 0;
  double det_b_min = INFINITY, det_b_max = -INFINITY;

  for (int arc = 0; arc < 200 && v.pass; ++arc) {
    const Vec4 a = oracle::random_unit_quaternion(rng);
    const Vec4 b = oracle::random_unit_quaternion(rng);
    const Vec3 position = oracle::random_pose(rng).position;
    auto report = [&](double t) {
      return singularity_report(Pose(position, UnitQuaternion::normalized(slerp(a, b, t))));
    };
    auto det_at = [&](double t) { return report(t).det_a; };
    auto prod_at = [&](double t) { return report(t).factored_value; };
    auto bisect = [](const std::function<double(double)>& f, double lo, double hi) {
      const double flo = f(lo);
      for (int k = 0; k < 80 && hi - lo > 1e-15; ++k) {
        const double mid = 0.5 * (lo + hi);
        if ((f(mid) < 0) == (flo < 0)) {
          lo = mid;
        } else {
          hi = mid;
        }
      }
      return 0.5 * (lo + hi);
    };

    SingularityReport prev = report(0.0);
    for (int k = 1; k <= samples; ++k) {
      const double t0 = (k - 1.0) / samples, t1 = static_cast<double>(k) / samples;
      const SingularityReport cur = report(t1);
      det_b_min = std::min(det_b_min, cur.det_b);
      det_b_max = std::max(det_b_max, cur.det_b);
      const bool det_flip = (prev.det_a < 0) != (cur.det_a < 0);
      const bool prod_flip = (prev.factored_value < 0) != (cur.factored_value < 0);
      if (det_flip != prod_flip) {
        v.require(false, "sign changes disagree on arc " + std::to_string(arc));
        break;
      }
      if (det_flip) {
        ++crossings;
        const double shift = std::abs(bisect(det_at, t0, t1) - bisect(prod_at, t0, t1));
        worst_shift = std::max(worst_shift, shift);
      }
      prev = cur;
    }
  }
  v.require(worst_shift <= 1e-8, "crossing shift " + fmt(worst_shift));
  v.require(det_b_min != 0.0 && (det_b_max - det_b_min) <= 1e-12 * std::abs(det_b_min),
            "det(B) spread " + fmt(det_b_max - det_b_min));
  if (v.pass) {
    v.detail = std::to_string(crossings) + " crossings, max shift " + fmt(worst_shift) +
               ", det(B) " + fmt(det_b_min);
  }
  return v;
}

Verdict eliminated_identity() {
  Verdict v;
  std::mt19937_64 rng(5);
  double worst = 0;
  for (int i = 0; i < 10000; ++i) {
    const EliminatedEquivalence e = eliminated_equivalence_check(
        UnitQuaternion::normalized(oracle::random_unit_quaternion(rng)));
    worst = std::max(worst, std::abs(e.factored_product - e.eliminated_product));
  }
  v.require(worst <= 1e-12, "max difference " + fmt(worst));
  if (v.pass) v.detail = "max difference " + fmt(worst);
  return v;
}

Verdict planar_quadratic() {
  Verdict v;
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> u(-1, 1);
  int inputs = 0, roots = 0;
  double worst = 0;
  while (inputs < 100) {
    // Planar poses: z = 0 and a rotation about the vertical axis.
    const Pose p(u(rng), u(rng), 0.0,
                 UnitQuaternion::from_axis_angle(Vec3::UnitZ(), std::numbers::pi * u(rng)));
    const ActuatedJoints j = inverse_kinematics(p).actuated;
    if (std::abs(j.rho1y + j.rho2y + j.rho3y) < 1e-3) continue;
    ++inputs;
    const DKOutcome o = direct_kinematics(j);
    const auto sols = planar_direct_kinematics(j);
    v.require(!sols.empty(), "no roots for a feasible planar input");
    for (const PlanarSolution& s : sols) {
      ++roots;
      worst = std::max(worst, s.max_residual);
      v.require(s.max_residual <= 1e-9, "lifted residual " + fmt(s.max_residual));
      v.require(contains(o.solutions, s.pose, 1e-8), "root missing from general DK");
    }
  }
  const auto sym = planar_direct_kinematics({0.1, 0, 0.1, 0, 0.1, 0});
  const double r = std::sqrt(2.91 / 9.0);
  v.require(sym.size() == 2 && std::abs(sym[0].rho1x + r) <= 1e-12 &&
                std::abs(sym[1].rho1x - r) <= 1e-12,
            "symmetric example roots wrong");
  if (v.pass) {
    v.detail = std::to_string(roots) + " roots, max residual " + fmt(worst);
  }
  return v;
}

Verdict velocity_model_check() {
  Verdict v;
  std::mt19937_64 rng(7);
  const auto twists = random_twists(10, 7);
  double worst = 0;
  for (int i = 0; i < 100; ++i) {
    const Pose p = oracle::random_pose(rng);
    for (const Vec6& t : twists) {
      worst = std::max(worst, finite_difference_velocity_check(p, t).residual);
    }
  }
  v.require(worst <= 1e-6, "max residual " + fmt(worst));
  if (v.pass) v.detail = "max residual " + fmt(worst);
  return v;
}

Verdict surface_export() {
  Verdict v;
  std::ostringstream out, err;
  const int code = cli::run({"surfaces"}, out, err);
  v.require(code == 0, "surfaces command failed: " + err.str());
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  v.require(line == "surface_id,q2,q3,q4", "bad header");
  int rows = 0, circle = 0;
  double worst = 0, worst_circle = 0;
  while (std::getline(in, line)) {
    ++rows;
    const auto comma = line.find(',');
    const std::string id = line.substr(0, comma);
    const auto q = io::parse_numbers(std::string_view(line).substr(comma + 1), 3, "row");
    const double q2 = q[0], q3 = q[1], q4 = q[2];
    const double cyl = 2 * q2 * q2 + 2 * q3 * q3 - 1;
    const double ell = q2 * q2 + q3 * q3 + 2 * q4 * q4 - 1;
    double res = INFINITY;
    if (id == "cylinder") res = std::abs(cyl);
    if (id == "ellipsoid") res = std::abs(ell);
    if (id == "selfmotion_circle") {
      ++circle;
      res = std::max(std::abs(q2 * q2 + q3 * q3 - 1), std::abs(q4));
      worst_circle = std::max(worst_circle, std::abs(ell));
    }
    worst = std::max(worst, res);
  }
  v.require(rows > 0 && circle > 0, "missing rows");
  v.require(worst <= 1e-9, "implicit residual " + fmt(worst));
  v.require(worst_circle <= 1e-12, "circle off ellipsoid by " + fmt(worst_circle));
  if (v.pass) {
    v.detail = std::to_string(rows) + " rows, max residual " + fmt(worst) +
               ", circle on ellipsoid " + fmt(worst_circle);
  }
  return v;
}

Verdict position_independence() {
  Verdict v;
  std::mt19937_64 rng(9);
  double worst = 0;
  for (int i = 0; i < 1000; ++i) {
    const Pose a = oracle::random_pose(rng, 5.0);
    const Pose b(oracle::random_pose(rng, 5.0).position, a.orientation);
    const SingularityReport ra = singularity_report(a), rb = singularity_report(b);
    std::vector<double> da = {ra.det_a, ra.det_b, ra.factored_value};
    std::vector<double> db = {rb.det_a, rb.det_b, rb.factored_value};
    for (int k = 0; k < 3; ++k) {
      da.push_back(ra.factor_values[k]);
      db.push_back(rb.factor_values[k]);
    }
    for (int k = 0; k < 2; ++k) {
      da.push_back(ra.eliminated_factors[k]);
      db.push_back(rb.eliminated_factors[k]);
    }
    for (int k = 0; k < 6; ++k) {
      da.push_back(ra.self_motion_locus_residuals[k]);
      db.push_back(rb.self_motion_locus_residuals[k]);
    }
    v.require(ra.det_ratio.has_value() == rb.det_ratio.has_value(), "ratio presence differs");
    if (ra.det_ratio && rb.det_ratio) {
      da.push_back(*ra.det_ratio);
      db.push_back(*rb.det_ratio);
    }
    for (std::size_t k = 0; k < da.size(); ++k) worst = std::max(worst, std::abs(da[k] - db[k]));
    v.require(ra.is_singular == rb.is_singular, "singular flag differs");
  }
  v.require(worst <= 1e-12, "max difference " + fmt(worst));
  if (v.pass) v.detail = "max difference " + fmt(worst);
  return v;
}

struct Criterion {
  int id;
  const char* name;
  double limit_seconds;  // 0: no runtime limit
  Verdict (*run)();
};

}  // namespace

int main() {
  const Criterion criteria[] = {
      {1, "home-position consistency", 1.0, home_position},
      {2, "cardanic family validity", 5.0, cardanic_family_validity},
      {3, "DK/IK roundtrip on 1000 nonsingular poses", 60.0, roundtrip},
      {4, "singularity zero-set agreement on 200 arcs", 0.0, singular_zero_sets},
      {5, "eliminated-form identity on 10000 quaternions", 0.0, eliminated_identity},
      {6, "planar quadratic vs full solver", 0.0, planar_quadratic},
      {7, "velocity model, 100 poses x 10 twists", 0.0, velocity_model_check},
      {8, "surface export", 0.0, surface_export},
      {9, "position-independence of singularity reports", 0.0, position_independence},
  };

  int failed = 0;
  for (const Criterion& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = c.run();
    } catch (const std::exception& e) {
      v.pass = false;
      v.detail = std::string("exception: ") + e.what();
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.limit_seconds > 0 && seconds >= c.limit_seconds) {
      v.pass = false;
      v.detail += " (over the " + fmt(c.limit_seconds) + " s limit)";
    }
    failed += !v.pass;
    std::printf("%s  [%d] %s: %s (%.3f s)\n", v.pass ? "PASS" : "FAIL", c.id, c.name,
                v.detail.c_str(), seconds);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(std::size(criteria)) - failed,
              std::size(criteria));
  return failed == 0 ? 0 : 1;
}
