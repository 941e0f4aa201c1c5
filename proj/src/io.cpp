#include "ppps/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <ostream>
#include <sstream>

namespace ppps::io {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

bool is_scalar(const Json& v) { return !v.is_object() && !v.is_array(); }

void emit(std::ostringstream& os, const Json& v, int depth) {
  const std::string pad(static_cast<std::size_t>(2 * (depth + 1)), ' ');
  const std::string close_pad(static_cast<std::size_t>(2 * depth), ' ');
  switch (v.type()) {
    case Json::value_t::object: {
      if (v.empty()) {
        os << "{}";
        return;
      }
      os << "{\n";
      bool first = true;
      for (const auto& [key, item] : v.items()) {
        if (!first) os << ",\n";
        first = false;
        os << pad << Json(key).dump() << ": ";
        emit(os, item, depth + 1);
      }
      os << "\n" << close_pad << "}";
      return;
    }
    case Json::value_t::array: {
      if (v.empty()) {
        os << "[]";
        return;
      }
      bool flat = true;
      for (const auto& item : v) flat = flat && is_scalar(item);
      if (flat) {
        os << "[";
        for (std::size_t i = 0; i < v.size(); ++i) {
          if (i) os << ", ";
          emit(os, v[i], depth + 1);
        }
        os << "]";
        return;
      }
      os << "[\n";
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) os << ",\n";
        os << pad;
        emit(os, v[i], depth + 1);
      }
      os << "\n" << close_pad << "]";
      return;
    }
    case Json::value_t::number_float: {
      const double d = v.get<double>();
      os << (std::isfinite(d) ? format_double(d) : "null");
      return;
    }
    default:
      os << v.dump();
  }
}

Json vec_json(std::initializer_list<double> values) {
  Json a = Json::array();
  for (double v : values) a.push_back(v);
  return a;
}

template <std::size_t N>
Json array_json(const std::array<double, N>& values) {
  Json a = Json::array();
  for (double v : values) a.push_back(v);
  return a;
}

}  // namespace

std::string format_double(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

std::string dump_json(const Json& value) {
  std::ostringstream os;
  emit(os, value, 0);
  os << "\n";
  return os.str();
}

std::vector<double> parse_numbers(std::string_view text, std::size_t count,
                                  std::string_view what) {
  std::vector<double> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = text.find(',', start);
    const std::string_view field = trim(text.substr(
        start, comma == std::string_view::npos ? std::string_view::npos
                                               : comma - start));
    double value = 0.0;
    const auto* end = field.data() + field.size();
    const auto [ptr, ec] = std::from_chars(field.data(), end, value);
    if (field.empty() || ec != std::errc() || ptr != end || !std::isfinite(value)) {
      throw KinematicsError(ErrorKind::InvalidInput,
                            "malformed number '" + std::string(field) +
                                "' in " + std::string(what));
    }
    out.push_back(value);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  if (out.size() != count) {
    throw KinematicsError(ErrorKind::InvalidInput,
                          std::string(what) + " needs " + std::to_string(count) +
                              " comma-separated values, got " +
                              std::to_string(out.size()));
  }
  return out;
}

Pose parse_pose(std::string_view text) {
  const auto v = parse_numbers(text, 7, "pose (x,y,z,q1,q2,q3,q4)");
  return Pose(v[0], v[1], v[2], UnitQuaternion::from_components(v[3], v[4], v[5], v[6]));
}

ActuatedJoints parse_joints(std::string_view text) {
  const auto v =
      parse_numbers(text, 6, "joints (rho1y,rho1z,rho2y,rho2z,rho3y,rho3z)");
  return {v[0], v[1], v[2], v[3], v[4], v[5]};
}

std::vector<std::string> read_records(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw KinematicsError(ErrorKind::InvalidInput, "cannot read '" + path + "'");
  }
  std::vector<std::string> records;
  std::string line;
  while (std::getline(in, line)) {
    const std::string_view t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    records.emplace_back(t);
  }
  return records;
}

Json to_json(const Pose& p) {
  Json j;
  j["x"] = p.x();
  j["y"] = p.y();
  j["z"] = p.z();
  const Vec4& q = p.orientation.coeffs();
  j["q"] = vec_json({q[0], q[1], q[2], q[3]});
  return j;
}

Json to_json(const ActuatedJoints& a) {
  Json j;
  j["rho1y"] = a.rho1y;
  j["rho1z"] = a.rho1z;
  j["rho2y"] = a.rho2y;
  j["rho2z"] = a.rho2z;
  j["rho3y"] = a.rho3y;
  j["rho3z"] = a.rho3z;
  return j;
}

Json to_json(const FullJointState& s) {
  Json j;
  j["actuated"] = to_json(s.actuated);
  j["passive"] = {{"rho1x", s.rho1x}, {"rho2x", s.rho2x}, {"rho3x", s.rho3x}};
  return j;
}

Json to_json(const SelfMotionCondition& c) {
  Json j;
  j["holds"] = c.holds;
  j["sum_rho_y"] = c.sum_rho_y;
  j["rho1z_minus_rho2z"] = c.rho1z_minus_rho2z;
  j["rho2z_minus_rho3z"] = c.rho2z_minus_rho3z;
  j["tolerance"] = SelfMotionCondition::kTolerance;
  return j;
}

Json to_json(const AxesCheck& a) {
  Json j;
  j["concurrent"] = a.concurrent;
  j["meeting_point"] =
      vec_json({a.meeting_point.x(), a.meeting_point.y(), a.meeting_point.z()});
  j["intersection_residual"] = a.intersection_residual;
  j["angle_error"] = a.angle_error;
  j["tolerance"] = AxesCheck::kTolerance;
  return j;
}

Json to_json(const CardanicFamily& f) {
  // x(theta) = center + amplitude cos(2 theta); both read off the family.
  const double x0 = f.at(0.0).x();
  const double center = f.at(0.25 * std::numbers::pi).x();
  Json j;
  j["joint_anchor"] = to_json(f.joint_anchor());
  j["orientation"] = "q(theta) = (0, cos(theta), sin(theta), 0)";
  j["position"] = "(x_center + x_amplitude * cos(2 theta), y, z)";
  j["x_center"] = center;
  j["x_amplitude"] = x0 - center;
  j["y"] = f.joint_anchor().rho1y;
  j["z"] = f.joint_anchor().rho1z;
  return j;
}

Json to_json(const DKOutcome& o) {
  Json j;
  j["kind"] = std::string(to_string(o.kind));
  Json sols = Json::array();
  for (const Pose& p : o.solutions) sols.push_back(to_json(p));
  j["solutions"] = sols;
  if (o.self_motion_family) {
    j["self_motion_family"] = to_json(*o.self_motion_family);
    Json iso = Json::array();
    for (const Pose& p : o.isolated_solutions) iso.push_back(to_json(p));
    j["isolated_solutions"] = iso;
  }
  j["self_motion_condition"] = to_json(o.condition);
  if (o.conditioning_warning) j["warning"] = *o.conditioning_warning;
  j["seeds"] = o.seeds;
  j["newton_runs"] = o.newton_runs;
  j["best_residual"] = o.best_residual;
  return j;
}

Json to_json(const PlanarQuadratic& pq) {
  Json j;
  j["a"] = pq.a;
  j["b"] = pq.b;
  j["c"] = pq.c;
  j["sum_rho_y"] = pq.sum_rho_y;
  j["discriminant"] = pq.discriminant();
  j["degenerate"] = pq.degenerate;
  return j;
}

Json to_json(const SingularityReport& r) {
  Json j;
  j["det_a"] = r.det_a;
  j["det_b"] = r.det_b;
  j["factored_value"] = r.factored_value;
  j["factor_values"] = array_json(r.factor_values);
  j["eliminated_factors"] = array_json(r.eliminated_factors);
  j["is_singular"] = r.is_singular;
  j["self_motion_locus_residuals"] = array_json(r.self_motion_locus_residuals);
  if (r.det_ratio) j["det_ratio"] = *r.det_ratio;
  j["tolerance"] = SingularityReport::kTolerance;
  return j;
}

void write_family_csv(std::ostream& out, std::span<const FamilyMember> members) {
  out << "theta,x,y,z,q1,q2,q3,q4,maxResidual\n";
  for (const FamilyMember& m : members) {
    const Vec4& q = m.pose.orientation.coeffs();
    out << format_double(m.theta) << ',' << format_double(m.pose.x()) << ','
        << format_double(m.pose.y()) << ',' << format_double(m.pose.z()) << ','
        << format_double(q[0]) << ',' << format_double(q[1]) << ','
        << format_double(q[2]) << ',' << format_double(q[3]) << ','
        << format_double(m.max_residual) << '\n';
  }
}

void write_surfaces_csv(std::ostream& out, std::span<const SurfacePoint> points) {
  out << "surface_id,q2,q3,q4\n";
  for (const SurfacePoint& p : points) {
    out << to_string(p.surface) << ',' << format_double(p.q2) << ','
        << format_double(p.q3) << ',' << format_double(p.q4) << '\n';
  }
}

}  // namespace ppps::io
