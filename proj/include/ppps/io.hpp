/**
 * @file  io.hpp
 * @brief Text formats: 17-significant-digit numbers, JSON emission, CSV
 *        writers for family traces and surface point clouds, and parsers for
 *        comma-separated pose and joint records.
 */

#pragma once

#include "ppps/kinematics.hpp"
#include "ppps/selfmotion.hpp"
#include "ppps/singularity.hpp"

#include "json.hpp"

#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ppps::io {

using Json = nlohmann::ordered_json;

inline constexpr int kJsonSchemaVersion = 1;

/// %.17g; round-trips every finite double.
std::string format_double(double value);

/// Two-space indentation, keys in insertion order, doubles at 17 significant
/// digits (non-finite doubles become null). Arrays of scalars stay on one line.
std::string dump_json(const Json& value);

/// Splits "a,b,c" into exactly `count` doubles. Throws
/// KinematicsError(InvalidInput) naming `what` on malformed fields.
std::vector<double> parse_numbers(std::string_view text, std::size_t count,
                                  std::string_view what);

/// "x,y,z,q1,q2,q3,q4"
Pose parse_pose(std::string_view text);

/// "rho1y,rho1z,rho2y,rho2z,rho3y,rho3z"
ActuatedJoints parse_joints(std::string_view text);

/// Non-empty, non-comment ('#') lines of a record file.
std::vector<std::string> read_records(const std::string& path);

Json to_json(const Pose& pose);
Json to_json(const ActuatedJoints& joints);
Json to_json(const FullJointState& state);
Json to_json(const SelfMotionCondition& condition);
Json to_json(const AxesCheck& check);
Json to_json(const CardanicFamily& family);
Json to_json(const DKOutcome& outcome);
Json to_json(const PlanarQuadratic& quadratic);
Json to_json(const SingularityReport& report);

/// theta,x,y,z,q1,q2,q3,q4,maxResidual
void write_family_csv(std::ostream& out, std::span<const FamilyMember> members);

/// surface_id,q2,q3,q4
void write_surfaces_csv(std::ostream& out, std::span<const SurfacePoint> points);

}  // namespace ppps::io
