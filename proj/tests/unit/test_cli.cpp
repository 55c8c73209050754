#include <gtest/gtest.h>

#include <json.hpp>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "toric_cy/fixtures.hpp"

using namespace toric_cy;
using json = nlohmann::json;

namespace {

struct Result {
  int code;
  std::string out, err;
  json parsed() const { return json::parse(out); }
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string data(const std::string& file) { return std::string(TORIC_CY_DATA_DIR) + "/" + file; }

std::string temp_file(const std::string& name, const std::string& content) {
  std::filesystem::path p = std::filesystem::temp_directory_path() / ("toric_cy_test_" + name);
  std::ofstream(p) << content;
  return p.string();
}

std::string shell_output(const std::string& command) {
  std::array<char, 4096> buf{};
  std::string out;
  FILE* pipe = popen(command.c_str(), "r");
  if (pipe == nullptr) return out;
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
  pclose(pipe);
  return out;
}

}  // namespace

TEST(Cli, ReebToAnglesExact) {
  Result r = run({"reeb-to-angles", data("dp1.json"), "--xi", "0,0,3", "--exact"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.parsed()["beta"], json({"13/12", "7/6", "13/12", "5/6"}));
}

TEST(Cli, ReebToAnglesFloating) {
  Result r = run({"reeb-to-angles", "fixture:dp2", "--xi", "0,0,3"});
  ASSERT_EQ(r.code, 0);
  std::vector<double> beta = r.parsed()["beta"].get<std::vector<double>>();
  EXPECT_NEAR(beta[4], 25.0 / 21.0, 1e-15);
}

TEST(Cli, AnglesToReebFlatModel) {
  Result r = run({"angles-to-reeb", data("octant3.json"), "--beta", "1,1,1"});
  ASSERT_EQ(r.code, 0) << r.err;
  json j = r.parsed();
  for (double x : j["xi"].get<std::vector<double>>()) EXPECT_NEAR(x, 1.0, 1e-12);
  EXPECT_LT(j["residual"].get<double>(), 1e-12);
  EXPECT_TRUE(j["verified"].get<bool>());
}

TEST(Cli, AnglesConeNegativeWithCertificate) {
  Result r = run({"angles-cone", data("p1p1.json"), "--beta", "1,2,1,1"});
  EXPECT_EQ(r.code, 1);
  json j = r.parsed();
  EXPECT_FALSE(j["member"].get<bool>());
  EXPECT_EQ(j["eta"], json({1, -1, 1, -1}));
  EXPECT_EQ(j["pairing"], "-1");

  Result ok = run({"angles-cone", data("p1p1.json"), "--beta", "1,2,2,1"});
  EXPECT_EQ(ok.code, 0);
  EXPECT_TRUE(ok.parsed()["member"].get<bool>());
}

TEST(Cli, CheckGoodAndDual) {
  Result r = run({"check-good", data("y21.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.parsed()["relations"], json({{3, -2, 1, -2}}));
  Result d = run({"dual", "fixture:conifold"});
  ASSERT_EQ(d.code, 0);
  EXPECT_TRUE(d.parsed()["double_dual_matches"].get<bool>());
}

TEST(Cli, InputErrors) {
  EXPECT_EQ(run({"check-good", "/nonexistent/cone.json"}).code, 2);
  EXPECT_EQ(run({"check-good", temp_file("broken.json", "{\"dim\": 3, \"normals\": [[1,0")}).code, 2);
  Result frac = run({"check-good", temp_file("frac.json", R"({"dim": 2, "normals": [[1, 0.5], [0, 1]]})")});
  EXPECT_EQ(frac.code, 2);
  EXPECT_EQ(frac.parsed()["error"], "InvalidInput");
  EXPECT_FALSE(frac.err.empty());
  EXPECT_EQ(run({"check-good", temp_file("prim.json", R"({"dim": 2, "normals": [[2, 0], [0, 1]]})")}).code, 2);
  EXPECT_EQ(run({"reeb-to-angles", "fixture:dp1", "--xi", "1,0,0"}).code, 2);
  EXPECT_EQ(run({"reeb-to-angles", "fixture:dp1", "--xi", "1,x,0"}).code, 2);
  EXPECT_EQ(run({"angles-to-reeb", "fixture:dp1", "--beta", "1,1,1"}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(Cli, MathematicalNegatives) {
  Result bad = run({"check-good", temp_file("notgood.json", R"({"dim": 3, "normals": [[1,0,0],[1,2,0],[0,0,1]]})")});
  EXPECT_EQ(bad.code, 1);
  EXPECT_EQ(bad.parsed()["error"], "NotGood");
  EXPECT_EQ(bad.parsed()["indices"], json({0, 1}));
  EXPECT_EQ(run({"klt", "fixture:p1xp1", "--beta", "1,2,1,1", "--ray", "1,0,2"}).code, 1);
  EXPECT_EQ(run({"angles-to-reeb", "fixture:p1xp1", "--beta", "1,2,1,1"}).code, 1);
}

TEST(Cli, KltReport) {
  Result r = run({"klt", "fixture:conifold", "--beta", "1,1,1,1", "--ray", "1,1,2", "--ray", "0,1,1"});
  ASSERT_EQ(r.code, 0) << r.err;
  json j = r.parsed();
  EXPECT_EQ(j["interior_point"], json({"0", "0", "1"}));
  EXPECT_EQ(j["discrepancies"][0]["discrepancy"], "1");
  EXPECT_EQ(j["discrepancies"][1]["discrepancy"], "0");
  EXPECT_TRUE(j["is_klt"].get<bool>());
  EXPECT_EQ(run({"klt", "fixture:conifold", "--beta", "1,1,1,1", "--ray", "-1,0,0"}).code, 2);
}

TEST(Cli, SolverConfigAndFailures) {
  Result r = run({"angles-to-reeb", "fixture:y21", "--beta", "1,1,1,1", "--config", data("solver.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(r.parsed().contains("certified_residual"));
  Result capped = run({"angles-to-reeb", "fixture:y32", "--beta", "1,1,1,1", "--max-iter", "1"});
  EXPECT_EQ(capped.code, 3);
  EXPECT_EQ(capped.parsed()["error"], "MaxIterations");
  std::string cfg = temp_file("cap.json", R"({"max_iter": 1})");
  EXPECT_EQ(run({"angles-to-reeb", "fixture:y32", "--beta", "1,1,1,1", "--config", cfg}).code, 3);
  EXPECT_EQ(run({"angles-to-reeb", "fixture:y32", "--beta", "1,1,1,1", "--config", temp_file("bad.json", "[1]")}).code, 2);
}

TEST(Cli, ToleranceFromEnvironment) {
  Result tight = run({"angles-to-reeb", "fixture:y31", "--beta", "1,1,1,1"});
  setenv("TORIC_CY_TOL", "1e-3", 1);
  Result loose = run({"angles-to-reeb", "fixture:y31", "--beta", "1,1,1,1"});
  unsetenv("TORIC_CY_TOL");
  ASSERT_EQ(tight.code, 0);
  ASSERT_EQ(loose.code, 0);
  EXPECT_LT(loose.parsed()["iterations"].get<int>(), tight.parsed()["iterations"].get<int>());
  EXPECT_LT(loose.parsed()["gradient_norm"].get<double>(), 1e-3);
}

TEST(Cli, VolumeFutakiScalar) {
  Result v = run({"volume", "fixture:octant3", "--xi", "1,1,1", "--exact"});
  ASSERT_EQ(v.code, 0);
  EXPECT_EQ(v.parsed()["volume"], "1/48");
  EXPECT_EQ(v.parsed()["terms"].size(), 1u);

  Result f = run({"futaki", "fixture:dp1", "--xi", "0,0,3", "--beta", "13/12,7/6,13/12,5/6", "--exact"});
  ASSERT_EQ(f.code, 0);
  EXPECT_TRUE(f.parsed()["vanishes"].get<bool>());

  Result s = run({"scalar", "fixture:dp3", "--xi", "0,0,3", "--beta", "1,1,1,1,1,1", "--exact"});
  ASSERT_EQ(s.code, 0) << s.err;
  json j = s.parsed();
  EXPECT_TRUE(j["integrated_scalar"]["identity_holds"].get<bool>());
  EXPECT_EQ(j["integrated_scalar"]["divisor_side"]["coefficient"], "4/3");
  EXPECT_LT(j["metric"]["reeb_residual"].get<double>(), 1e-13);
  EXPECT_TRUE(j["abreu"].contains("error_indicator"));
}

TEST(Cli, FixturesRunAllIsDeterministic) {
  Result a = run({"fixtures", "run-all"}), b = run({"fixtures", "run-all"});
  ASSERT_EQ(a.code, 0) << a.out;
  EXPECT_EQ(a.out, b.out);
  EXPECT_TRUE(a.parsed()["passed"].get<bool>());
  Result one = run({"fixtures", "run", "dp2"});
  EXPECT_EQ(one.code, 0);
  EXPECT_EQ(run({"fixtures", "run", "nope"}).code, 2);
  EXPECT_EQ(run({"fixtures", "list"}).parsed()["fixtures"].size(), fixtures().size());
}

TEST(Cli, SeparateProcessesProduceIdenticalBytes) {
  std::string cmd = std::string(TORIC_CY_BINARY) + " fixtures run-all";
  std::string first = shell_output(cmd), second = shell_output(cmd);
  ASSERT_FALSE(first.empty());
  EXPECT_EQ(first, second);
}

TEST(Cli, ExitCodeClasses) {
  EXPECT_EQ(cli::exit_code_for(Errc::NotGood), 1);
  EXPECT_EQ(cli::exit_code_for(Errc::NotInAnglesCone), 1);
  EXPECT_EQ(cli::exit_code_for(Errc::InvalidInput), 2);
  EXPECT_EQ(cli::exit_code_for(Errc::ReebNotInterior), 2);
  EXPECT_EQ(cli::exit_code_for(Errc::LineSearchFailure), 3);
  EXPECT_EQ(cli::exit_code_for(Errc::SingularHessian), 3);
}
