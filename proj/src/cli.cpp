#include "ppps/cli.hpp"

#include "ppps/batch.hpp"
#include "ppps/io.hpp"

#include "CLI11.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>

namespace ppps::cli {

namespace {

using io::Json;

// Raised while turning arguments into inputs, before any computation.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Output {
  std::string format;
  std::string path;
};

Json envelope(std::string_view command) {
  Json j;
  j["schema_version"] = io::kJsonSchemaVersion;
  j["command"] = std::string(command);
  return j;
}

void require_format(const Output& o, std::initializer_list<std::string_view> allowed,
                    std::string_view command) {
  if (std::find(allowed.begin(), allowed.end(), o.format) == allowed.end()) {
    throw UsageError("--format " + o.format + " is not supported by '" +
                     std::string(command) + "'");
  }
}

template <typename T>
std::vector<T> collect(const std::string& inline_value, const std::string& input,
                       const char* flag, T (*parse)(std::string_view)) {
  if (!inline_value.empty() && !input.empty()) {
    throw UsageError(std::string("use either ") + flag + " or --input, not both");
  }
  std::vector<T> out;
  try {
    if (!inline_value.empty()) {
      out.push_back(parse(inline_value));
    } else if (!input.empty()) {
      for (const std::string& record : io::read_records(input)) {
        out.push_back(parse(record));
      }
    }
  } catch (const KinematicsError& e) {
    throw UsageError(std::string(flag) + ": " + e.what());
  }
  if (out.empty()) {
    throw UsageError(std::string(flag) + " or --input is required");
  }
  return out;
}

Pose single_pose(const std::string& text) {
  try {
    return io::parse_pose(text);
  } catch (const KinematicsError& e) {
    throw UsageError(std::string("--pose: ") + e.what());
  }
}

ActuatedJoints single_joints(const std::string& text) {
  try {
    return io::parse_joints(text);
  } catch (const KinematicsError& e) {
    throw UsageError(std::string("--joints: ") + e.what());
  }
}

void emit(const Output& o, const std::string& text, std::ostream& out) {
  if (o.path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(o.path, std::ios::binary);
  if (!file) throw UsageError("cannot write '" + o.path + "'");
  file << text;
}

void add_output_options(CLI::App* sub, Output& o, std::string default_format) {
  o.format = std::move(default_format);
  sub->add_option("--format", o.format, "Output format: json or csv")
      ->capture_default_str();
  sub->add_option("--out", o.path, "Write output to this file instead of stdout");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Kinematics toolkit for the 3-PPPS parallel robot with "
               "delta-shaped base",
               "ppps"};
  app.set_config("--config", "",
                 "INI/TOML file with the same keys as the flags (flags win)");
  app.require_subcommand(1);

  // Task to run once parsing has succeeded; built by the chosen subcommand.
  std::function<std::string()> prepare;
  const Output* chosen = nullptr;

  // ik
  Output ik_out;
  std::string ik_pose, ik_input;
  auto* ik = app.add_subcommand("ik", "Inverse kinematics of one or more poses");
  ik->add_option("--pose", ik_pose, "x,y,z,q1,q2,q3,q4");
  ik->add_option("--input", ik_input, "File with one pose per line");
  add_output_options(ik, ik_out, "json");
  ik->callback([&] {
    chosen = &ik_out;
    require_format(ik_out, {"json", "csv"}, "ik");
    const auto poses = collect<Pose>(ik_pose, ik_input, "--pose", &io::parse_pose);
    prepare = [&, poses] {
      const auto states = inverse_kinematics_batch(poses);
      if (ik_out.format == "csv") {
        std::ostringstream os;
        os << "x,y,z,q1,q2,q3,q4,rho1y,rho1z,rho2y,rho2z,rho3y,rho3z,rho1x,"
              "rho2x,rho3x,maxResidual\n";
        for (std::size_t i = 0; i < poses.size(); ++i) {
          const Vec4& q = poses[i].orientation.coeffs();
          std::vector<double> row = {poses[i].x(), poses[i].y(), poses[i].z(),
                                     q[0], q[1], q[2], q[3]};
          for (double v : states[i].actuated.as_array()) row.push_back(v);
          row.push_back(states[i].rho1x);
          row.push_back(states[i].rho2x);
          row.push_back(states[i].rho3x);
          row.push_back(max_residual(poses[i], states[i].actuated));
          for (std::size_t k = 0; k < row.size(); ++k) {
            os << (k ? "," : "") << io::format_double(row[k]);
          }
          os << '\n';
        }
        return os.str();
      }
      Json j = envelope("ik");
      Json results = Json::array();
      for (std::size_t i = 0; i < poses.size(); ++i) {
        Json r;
        r["pose"] = io::to_json(poses[i]);
        r["joints"] = io::to_json(states[i]);
        r["max_residual"] = max_residual(poses[i], states[i].actuated);
        results.push_back(r);
      }
      j["results"] = results;
      return io::dump_json(j);
    };
  });

  // dk
  Output dk_out;
  std::string dk_joints, dk_input;
  std::map<std::string, std::string> dk_settings;
  auto* dk = app.add_subcommand("dk", "Direct kinematics by multistart Newton");
  dk->add_option("--joints", dk_joints, "rho1y,rho1z,rho2y,rho2z,rho3y,rho3z");
  dk->add_option("--input", dk_input, "File with one joint vector per line");
  for (const char* key : {"max-iter", "tolerance", "divergence", "seed-density",
                          "max-deflation-restarts", "execution"}) {
    dk->add_option_function<std::string>(
        std::string("--") + key,
        [&dk_settings, key](const std::string& v) { dk_settings[key] = v; },
        "Solver option");
  }
  add_output_options(dk, dk_out, "json");
  dk->callback([&] {
    chosen = &dk_out;
    require_format(dk_out, {"json", "csv"}, "dk");
    const auto joints =
        collect<ActuatedJoints>(dk_joints, dk_input, "--joints", &io::parse_joints);
    SolverOptions options;
    try {
      for (const auto& [k, v] : dk_settings) options.set(k, v);
    } catch (const KinematicsError& e) {
      throw UsageError(e.what());
    }
    prepare = [&, joints, options] {
      const auto outcomes = direct_kinematics_batch(
          joints, options,
          joints.size() > 1 ? options.execution : Execution::Serial);
      if (dk_out.format == "csv") {
        std::ostringstream os;
        os << "record,kind,x,y,z,q1,q2,q3,q4\n";
        for (std::size_t i = 0; i < outcomes.size(); ++i) {
          const auto& o = outcomes[i];
          const auto& poses =
              o.kind == DKKind::SelfMotion ? o.isolated_solutions : o.solutions;
          if (poses.empty()) os << i << ',' << to_string(o.kind) << ",,,,,,,\n";
          for (const Pose& p : poses) {
            const Vec4& q = p.orientation.coeffs();
            os << i << ',' << to_string(o.kind);
            for (double v : {p.x(), p.y(), p.z(), q[0], q[1], q[2], q[3]}) {
              os << ',' << io::format_double(v);
            }
            os << '\n';
          }
        }
        return os.str();
      }
      Json j = envelope("dk");
      Json results = Json::array();
      for (std::size_t i = 0; i < outcomes.size(); ++i) {
        Json r;
        r["joints"] = io::to_json(joints[i]);
        r["outcome"] = io::to_json(outcomes[i]);
        results.push_back(r);
      }
      j["results"] = results;
      return io::dump_json(j);
    };
  });

  // planar-dk
  Output planar_out;
  std::string planar_joints;
  auto* planar = app.add_subcommand(
      "planar-dk", "Planar direct kinematics (all rho_iz = 0) via the quadratic");
  planar->add_option("--joints", planar_joints, "rho1y,rho1z,rho2y,rho2z,rho3y,rho3z")
      ->required();
  add_output_options(planar, planar_out, "json");
  planar->callback([&] {
    chosen = &planar_out;
    require_format(planar_out, {"json"}, "planar-dk");
    const ActuatedJoints j = single_joints(planar_joints);
    prepare = [j] {
      const PlanarQuadratic pq = planar_quadratic_coefficients(j);
      const auto sols = planar_direct_kinematics(j);
      Json doc = envelope("planar-dk");
      doc["joints"] = io::to_json(j);
      doc["quadratic"] = io::to_json(pq);
      Json arr = Json::array();
      for (const auto& s : sols) {
        Json r;
        r["rho1x"] = s.rho1x;
        r["pose"] = io::to_json(s.pose);
        r["max_residual"] = s.max_residual;
        arr.push_back(r);
      }
      doc["solutions"] = arr;
      return io::dump_json(doc);
    };
  });

  // selfmotion-check
  Output check_out;
  std::string check_joints, check_pose;
  auto* check = app.add_subcommand(
      "selfmotion-check",
      "Self-motion conditions of joint values and/or passive-axis concurrency "
      "at a pose");
  check->add_option("--joints", check_joints, "rho1y,rho1z,rho2y,rho2z,rho3y,rho3z");
  check->add_option("--pose", check_pose, "x,y,z,q1,q2,q3,q4");
  add_output_options(check, check_out, "json");
  check->callback([&] {
    chosen = &check_out;
    require_format(check_out, {"json"}, "selfmotion-check");
    if (check_joints.empty() && check_pose.empty()) {
      throw UsageError("selfmotion-check needs --joints and/or --pose");
    }
    std::optional<ActuatedJoints> j;
    std::optional<Pose> p;
    if (!check_joints.empty()) j = single_joints(check_joints);
    if (!check_pose.empty()) p = single_pose(check_pose);
    prepare = [j, p] {
      Json doc = envelope("selfmotion-check");
      if (j) {
        doc["joints"] = io::to_json(*j);
        doc["condition"] = io::to_json(self_motion_condition(*j));
      }
      if (p) {
        doc["pose"] = io::to_json(*p);
        doc["axes"] = io::to_json(self_motion_axes(*p));
      }
      return io::dump_json(doc);
    };
  });

  // selfmotion-trace
  Output trace_out;
  std::string trace_joints = "0,0,0,0,0,0";
  int trace_samples = 360;
  auto* trace = app.add_subcommand(
      "selfmotion-trace", "Sample the Cardanic self-motion family");
  trace->add_option("--joints", trace_joints, "rho1y,rho1z,rho2y,rho2z,rho3y,rho3z")
      ->capture_default_str();
  trace->add_option("--samples", trace_samples, "Number of theta samples")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  add_output_options(trace, trace_out, "csv");
  trace->callback([&] {
    chosen = &trace_out;
    require_format(trace_out, {"json", "csv"}, "selfmotion-trace");
    const ActuatedJoints j = single_joints(trace_joints);
    prepare = [&, j] {
      const CardanicFamily family = cardanic_family(j);
      const auto members = family.sample(trace_samples);
      if (trace_out.format == "csv") {
        std::ostringstream os;
        io::write_family_csv(os, members);
        return os.str();
      }
      Json doc = envelope("selfmotion-trace");
      doc["family"] = io::to_json(family);
      Json arr = Json::array();
      for (const auto& m : members) {
        Json r;
        r["theta"] = m.theta;
        r["pose"] = io::to_json(m.pose);
        r["max_residual"] = m.max_residual;
        arr.push_back(r);
      }
      doc["members"] = arr;
      return io::dump_json(doc);
    };
  });

  // singularity
  Output sing_out;
  std::string sing_pose, sing_input;
  auto* sing = app.add_subcommand("singularity", "Parallel-singularity report");
  sing->add_option("--pose", sing_pose, "x,y,z,q1,q2,q3,q4");
  sing->add_option("--input", sing_input, "File with one pose per line");
  add_output_options(sing, sing_out, "json");
  sing->callback([&] {
    chosen = &sing_out;
    require_format(sing_out, {"json"}, "singularity");
    const auto poses =
        collect<Pose>(sing_pose, sing_input, "--pose", &io::parse_pose);
    prepare = [poses] {
      const auto reports = singularity_report_batch(poses);
      Json doc = envelope("singularity");
      Json arr = Json::array();
      for (std::size_t i = 0; i < poses.size(); ++i) {
        Json r;
        r["pose"] = io::to_json(poses[i]);
        r["report"] = io::to_json(reports[i]);
        arr.push_back(r);
      }
      doc["results"] = arr;
      return io::dump_json(doc);
    };
  });

  // surfaces
  Output surf_out;
  int resolution = 64;
  auto* surf = app.add_subcommand(
      "surfaces", "Point clouds of the singular surfaces and self-motion circle");
  surf->add_option("--resolution", resolution, "Grid density (>= 8)")
      ->capture_default_str();
  add_output_options(surf, surf_out, "csv");
  surf->callback([&] {
    chosen = &surf_out;
    require_format(surf_out, {"csv"}, "surfaces");
    if (resolution < 8) throw UsageError("--resolution must be at least 8");
    prepare = [&] {
      const auto points = sample_singularity_surfaces(resolution);
      std::ostringstream os;
      io::write_surfaces_csv(os, points);
      return os.str();
    };
  });

  // velocity-check
  Output vel_out;
  std::string vel_pose;
  int directions = 10;
  unsigned long long vel_seed = 1;
  double vel_step = 1e-6;
  auto* vel = app.add_subcommand(
      "velocity-check",
      "Finite-difference check of A t + B rho_dot = 0 along random twists");
  vel->add_option("--pose", vel_pose, "x,y,z,q1,q2,q3,q4")->required();
  vel->add_option("--directions", directions, "Number of random twists")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  vel->add_option("--seed", vel_seed, "Twist generator seed")->capture_default_str();
  vel->add_option("--step", vel_step, "Central-difference step")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  add_output_options(vel, vel_out, "json");
  vel->callback([&] {
    chosen = &vel_out;
    require_format(vel_out, {"json"}, "velocity-check");
    const Pose p = single_pose(vel_pose);
    prepare = [&, p] {
      const VelocityModel m = velocity_model(p);
      Json doc = envelope("velocity-check");
      doc["pose"] = io::to_json(p);
      doc["twist_convention"] = std::string(kTwistConvention);
      auto rows = [](const Mat6& a) {
        Json out = Json::array();
        for (int r = 0; r < 6; ++r) {
          Json row = Json::array();
          for (int c = 0; c < 6; ++c) row.push_back(a(r, c));
          out.push_back(row);
        }
        return out;
      };
      doc["A"] = rows(m.A);
      doc["B"] = rows(m.B);
      double worst = 0.0;
      Json checks = Json::array();
      for (const Vec6& t : random_twists(directions, vel_seed)) {
        const VelocityCheck c = finite_difference_velocity_check(p, t, vel_step);
        worst = std::max(worst, c.residual);
        Json r;
        r["twist"] = Json(std::vector<double>(t.data(), t.data() + 6));
        r["joint_rates"] =
            Json(std::vector<double>(c.joint_rates.data(), c.joint_rates.data() + 6));
        r["residual"] = c.residual;
        checks.push_back(r);
      }
      doc["checks"] = checks;
      doc["max_residual"] = worst;
      return io::dump_json(doc);
    };
  });

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsageError;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsageError;
  }

  try {
    emit(*chosen, prepare(), out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsageError;
  } catch (const KinematicsError& e) {
    err << "error: " << e.what() << "\n";
    for (const auto& [name, value] : e.diagnostics()) {
      err << "  " << name << " = " << io::format_double(value) << "\n";
    }
    return kExitDomainError;
  }
  return kExitOk;
}

}  // namespace ppps::cli
