#include "ppps/cli.hpp"

#include "ppps/io.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

using namespace ppps;
using io::Json;

namespace {

struct Invocation {
  int code;
  std::string out;
  std::string err;
};

Invocation invoke(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string temp_file(const std::string& name, const std::string& content) {
  const std::string path = testing::TempDir() + name;
  std::ofstream(path) << content;
  return path;
}

}  // namespace

TEST(Cli, InverseKinematicsMatchesLibrary) {
  const Invocation r = invoke({"ik", "--pose", "0.57735026918962573,0.2,0.3,1,0,0,0"});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  const Json j = Json::parse(r.out);
  EXPECT_EQ(j["schema_version"], io::kJsonSchemaVersion);
  EXPECT_EQ(j["command"], "ik");
  const auto want =
      inverse_kinematics(io::parse_pose("0.57735026918962573,0.2,0.3,1,0,0,0"));
  EXPECT_EQ(j["results"][0]["joints"]["actuated"], io::to_json(want.actuated));
  EXPECT_NEAR(j["results"][0]["joints"]["actuated"]["rho2y"].get<double>(), -0.1, 1e-15);
}

TEST(Cli, InverseKinematicsCsvFromFile) {
  const std::string path =
      temp_file("cli_poses.txt", "# poses\n0,0,0,1,0,0,0\n0.5,0,0,0,0,0,1\n");
  const Invocation r = invoke({"ik", "--input", path, "--format", "csv"});
  ASSERT_EQ(r.code, 0) << r.err;
  std::istringstream in(r.out);
  std::string line;
  int lines = 0;
  while (std::getline(in, line)) ++lines;
  EXPECT_EQ(lines, 3);
  EXPECT_EQ(r.out.rfind("x,y,z,q1,q2,q3,q4,rho1y", 0), 0u);
}

TEST(Cli, DirectKinematicsMatchesLibrary) {
  const Invocation r = invoke({"dk", "--joints", "0.1,0,0.1,0,0.1,0"});
  ASSERT_EQ(r.code, 0) << r.err;
  const Json outcome = Json::parse(r.out)["results"][0]["outcome"];
  EXPECT_EQ(outcome["kind"], "FiniteSolutions");
  const DKOutcome direct = direct_kinematics({0.1, 0, 0.1, 0, 0.1, 0});
  ASSERT_EQ(outcome["solutions"].size(), direct.solutions.size());
  for (std::size_t i = 0; i < direct.solutions.size(); ++i) {
    EXPECT_EQ(outcome["solutions"][i], io::to_json(direct.solutions[i]));
  }
}

TEST(Cli, DirectKinematicsSelfMotionAndNoSolution) {
  const Invocation home = invoke({"dk", "--joints", "0,0,0,0,0,0"});
  ASSERT_EQ(home.code, 0);
  const Json o = Json::parse(home.out)["results"][0]["outcome"];
  EXPECT_EQ(o["kind"], "SelfMotion");
  EXPECT_TRUE(o.contains("self_motion_family"));

  const Invocation none = invoke({"dk", "--joints", "0.6,0,0.6,0,0.6,0", "--format", "csv"});
  ASSERT_EQ(none.code, 0);
  EXPECT_EQ(none.out, "record,kind,x,y,z,q1,q2,q3,q4\n0,NoSolution,,,,,,,\n");
}

TEST(Cli, SolverFlagsAndConfigFile) {
  const Invocation bad = invoke({"dk", "--joints", "0,0,0,0,0,0", "--max-iter", "0"});
  EXPECT_EQ(bad.code, cli::kExitUsageError);

  const Invocation seeded = invoke({"dk", "--joints", "0.1,0,0.1,0,0.1,0", "--seed-density", "1",
                          "--execution", "serial"});
  ASSERT_EQ(seeded.code, 0) << seeded.err;
  EXPECT_GT(Json::parse(seeded.out)["results"][0]["outcome"]["seeds"].get<int>(), 38);

  // Config values apply; explicit flags override them.
  const std::string cfg = temp_file("cli.ini", "[dk]\nseed-density=1\njoints=\"0.1,0,0.1,0,0.1,0\"\n");
  const Invocation from_cfg = invoke({"--config", cfg, "dk"});
  ASSERT_EQ(from_cfg.code, 0) << from_cfg.err;
  EXPECT_GT(Json::parse(from_cfg.out)["results"][0]["outcome"]["seeds"].get<int>(), 38);
  const Invocation flag_wins = invoke({"--config", cfg, "dk", "--seed-density", "0"});
  ASSERT_EQ(flag_wins.code, 0) << flag_wins.err;
  EXPECT_EQ(Json::parse(flag_wins.out)["results"][0]["outcome"]["seeds"].get<int>(), 38);
}

TEST(Cli, PlanarExamplesAndDomainErrors) {
  const Invocation ok = invoke({"planar-dk", "--joints", "0.1,0,0.1,0,0.1,0"});
  ASSERT_EQ(ok.code, 0) << ok.err;
  const Json j = Json::parse(ok.out);
  EXPECT_NEAR(j["quadratic"]["c"].get<double>(), -2.91, 1e-15);
  ASSERT_EQ(j["solutions"].size(), 2u);
  EXPECT_NEAR(j["solutions"][1]["rho1x"].get<double>(), std::sqrt(2.91 / 9), 1e-12);

  const Invocation not_planar = invoke({"planar-dk", "--joints", "0.1,0.01,0.1,0,0.1,0"});
  EXPECT_EQ(not_planar.code, cli::kExitDomainError);
  EXPECT_NE(not_planar.err.find("NotPlanar"), std::string::npos);
  EXPECT_TRUE(not_planar.out.empty());

  const Invocation degenerate = invoke({"planar-dk", "--joints", "0,0,0,0,0,0"});
  EXPECT_EQ(degenerate.code, cli::kExitDomainError);
  EXPECT_NE(degenerate.err.find("Degenerate"), std::string::npos);

  const Invocation not_family = invoke({"selfmotion-trace", "--joints", "0.1,0,0,0,0,0"});
  EXPECT_EQ(not_family.code, cli::kExitDomainError);
  EXPECT_NE(not_family.err.find("sum_rho_y"), std::string::npos);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(invoke({}).code, cli::kExitUsageError);
  EXPECT_EQ(invoke({"bogus"}).code, cli::kExitUsageError);
  EXPECT_EQ(invoke({"ik"}).code, cli::kExitUsageError);
  EXPECT_EQ(invoke({"ik", "--pose", "1,2,3"}).code, cli::kExitUsageError);
  EXPECT_EQ(invoke({"ik", "--pose", "0,0,0,1,0.1,0,0"}).code, cli::kExitUsageError);
  EXPECT_EQ(invoke({"ik", "--pose", "0,0,0,1,0,0,0", "--format", "xml"}).code,
            cli::kExitUsageError);
  EXPECT_EQ(invoke({"surfaces", "--resolution", "4"}).code, cli::kExitUsageError);
  EXPECT_EQ(invoke({"surfaces", "--format", "json"}).code, cli::kExitUsageError);
  EXPECT_EQ(invoke({"selfmotion-check"}).code, cli::kExitUsageError);
  EXPECT_EQ(invoke({"dk", "--input", "/nonexistent/joints.txt"}).code, cli::kExitUsageError);
}

TEST(Cli, Help) {
  const Invocation r = invoke({"--help"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("selfmotion-trace"), std::string::npos);
  EXPECT_EQ(invoke({"dk", "--help"}).code, 0);
}

TEST(Cli, SelfMotionCommands) {
  const Invocation check = invoke({"selfmotion-check", "--joints", "0,0,0,0,0,0", "--pose",
                         "0.1,0.2,0.3,0.9,0.3,0.3,0.1"});
  ASSERT_EQ(check.code, 0) << check.err;
  const Json c = Json::parse(check.out);
  EXPECT_EQ(c["condition"]["holds"], true);
  EXPECT_EQ(c["axes"]["concurrent"], false);

  const Invocation trace = invoke({"selfmotion-trace", "--samples", "4"});
  ASSERT_EQ(trace.code, 0);
  EXPECT_EQ(trace.out.rfind("theta,x,y,z,q1,q2,q3,q4,maxResidual\n0,", 0), 0u);

  const Invocation json = invoke({"selfmotion-trace", "--samples", "4", "--format", "json"});
  ASSERT_EQ(json.code, 0);
  EXPECT_EQ(Json::parse(json.out)["members"].size(), 4u);
}

TEST(Cli, SingularitySurfacesAndVelocity) {
  const Invocation s = invoke({"singularity", "--pose", "0,0,0,0.70710678118654752,0,0,0.70710678118654752"});
  ASSERT_EQ(s.code, 0) << s.err;
  EXPECT_EQ(Json::parse(s.out)["results"][0]["report"]["is_singular"], true);

  const Invocation surf = invoke({"surfaces", "--resolution", "8"});
  ASSERT_EQ(surf.code, 0);
  std::istringstream in(surf.out);
  std::string line;
  int rows = -1;
  while (std::getline(in, line)) ++rows;
  EXPECT_EQ(rows, 9 * 8 + 2 + 7 * 8 + 8);

  const Invocation v = invoke({"velocity-check", "--pose", "0.1,0.2,0.3,0.9,0.3,0.3,0.1", "--directions", "3"});
  EXPECT_EQ(v.code, 0) << v.err;  // 0.9,0.3,0.3,0.1 has norm 1
  const Json vj = Json::parse(v.out);
  EXPECT_EQ(vj["checks"].size(), 3u);
  EXPECT_LE(vj["max_residual"].get<double>(), 1e-6);
}

TEST(Cli, OutFileAndDeterminism) {
  const std::string path = testing::TempDir() + "cli_out.csv";
  ASSERT_EQ(invoke({"surfaces", "--resolution", "12", "--out", path}).code, 0);
  std::ifstream f(path);
  std::stringstream content;
  content << f.rdbuf();
  const Invocation again = invoke({"surfaces", "--resolution", "12"});
  EXPECT_EQ(content.str(), again.out);
  std::remove(path.c_str());

  const Invocation a = invoke({"dk", "--joints", "0.3,0.1,-0.2,0.05,0.4,-0.1"});
  const Invocation b = invoke({"dk", "--joints", "0.3,0.1,-0.2,0.05,0.4,-0.1"});
  EXPECT_EQ(a.out, b.out);
}
