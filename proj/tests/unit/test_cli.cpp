// Drives the verify executable end to end: exit codes, report and CSV files.

#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

#include "json.hpp"

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct Result {
  int code = -1;
  std::string out;
};

Result run(std::string const& args) {
  std::string cmd = std::string(VERIFY_EXE) + " " + args + " 2>/dev/null";
  Result r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  char buf[4096];
  std::size_t n = 0;
  while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
  int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string slurp(fs::path const& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    auto const* info = ::testing::UnitTest::GetInstance()->current_test_info();
    dir_ = fs::temp_directory_path() /
           ("rcgeom_cli_" + std::string(info->name()) + "_" + std::to_string(::getpid()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string path(char const* name) const { return (dir_ / name).string(); }
  fs::path dir_;
};

std::string data(char const* name) {
  return std::string(RCGEOM_DATA_DIR) + "/spacetimes/" + name;
}

TEST_F(Cli, ListShowsCatalog) {
  auto r = run("list");
  EXPECT_EQ(r.code, 0);
  for (char const* n : {"minkowski", "minkowski-constant-e", "schwarzschild", "reissner-nordstrom",
                        "em-plane-wave", "charge-ball"}) {
    EXPECT_NE(r.out.find(n), std::string::npos) << n;
  }
}

TEST_F(Cli, PassingRunExitsZeroWithParsableReport) {
  auto r = run("run --spacetime reissner-nordstrom --suite all");
  ASSERT_EQ(r.code, 0) << r.out;
  auto j = json::parse(r.out);
  EXPECT_EQ(j["spacetime"], "reissner-nordstrom");
  EXPECT_EQ(j["wall_ms"], 0);
  for (auto const& c : j["checks"]) EXPECT_TRUE(c["pass"].get<bool>()) << c["id"];
}

TEST_F(Cli, TimingFlagRecordsWallTime) {
  auto r = run("run --spacetime minkowski --suite metric --timing");
  ASSERT_EQ(r.code, 0);
  EXPECT_GT(json::parse(r.out)["wall_ms"].get<double>(), 0.0);
}

TEST_F(Cli, ReportToFilePrintsSummary) {
  auto r = run("run --spacetime schwarzschild --suite lc --diff fd --out " + path("r.json"));
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("ok "), std::string::npos);
  auto j = json::parse(slurp(path("r.json")));
  EXPECT_EQ(j["diff_mode"], "fd");
  EXPECT_EQ(j["suite"], "lc");
}

TEST_F(Cli, TightToleranceExitsOne) {
  auto r = run("run --spacetime reissner-nordstrom --suite lc --tol lc.metric_compatibility=1e-30");
  EXPECT_EQ(r.code, 1);
  auto j = json::parse(r.out);
  bool failed = false;
  for (auto const& c : j["checks"]) {
    if (c["id"] == "lc.metric_compatibility") failed = !c["pass"].get<bool>();
  }
  EXPECT_TRUE(failed);
}

TEST_F(Cli, UsageAndLoadErrorsExitTwo) {
  EXPECT_EQ(run("").code, 2);
  EXPECT_EQ(run("run").code, 2);
  EXPECT_EQ(run("run --spacetime kerr").code, 2);
  EXPECT_EQ(run("run --spacetime " + data("bad_signature.st")).code, 2);
  EXPECT_EQ(run("run --spacetime minkowski --diff central").code, 2);
  EXPECT_EQ(run("run --spacetime minkowski --tol nonsense.check=1").code, 2);
  EXPECT_EQ(run("run --spacetime minkowski --tol metric.inverse=abc").code, 2);
  EXPECT_EQ(run("run --spacetime minkowski --param M=1").code, 2);
  EXPECT_EQ(run("run --spacetime minkowski --grid w=0:1:2").code, 2);
  EXPECT_EQ(run("run --spacetime minkowski --suite nope").code, 2);
  EXPECT_EQ(run("gauge --spacetime minkowski").code, 2);
  EXPECT_EQ(run("gauge --spacetime minkowski --phi 't +'").code, 2);
  EXPECT_EQ(run("worldline --spacetime minkowski --x0 0,1,0 --v0 1,0,0,0").code, 2);
  EXPECT_EQ(run("worldline --spacetime minkowski --x0 0,1,0,0 --v0 0,1,0,0").code, 2);
}

TEST_F(Cli, SpacetimeFilesLoad) {
  for (char const* f : {"minkowski_spherical.st", "reissner_nordstrom.st", "charge_ball.st"}) {
    EXPECT_EQ(run(std::string("run --spacetime ") + data(f)).code, 0) << f;
  }
}

TEST_F(Cli, GaugeSubcommand) {
  auto r = run("gauge --spacetime reissner-nordstrom --phi '0.1*t*r'");
  ASSERT_EQ(r.code, 0) << r.out;
  auto j = json::parse(r.out);
  EXPECT_EQ(j["suite"], "gauge");
  bool saw_delta = false;
  for (auto const& o : j["observations"]) {
    if (o["id"] == "gauge.K_delta") saw_delta = o["value"].get<double>() > 0.0;
  }
  EXPECT_TRUE(saw_delta);
}

TEST_F(Cli, WorldlineWritesTrajectory) {
  auto csv = path("traj.csv");
  auto r = run("worldline --spacetime minkowski-constant-e --x0 0,2,0,0 --v0 1,0,0,0 "
               "--charge-ratio 0.5 --ds 1e-3 --steps 2000 --save-every 100 --out " + csv);
  ASSERT_EQ(r.code, 0);
  auto j = json::parse(r.out);
  EXPECT_LE(j["closed_form_error"].get<double>(), 1e-6);
  EXPECT_LE(j["max_norm_drift"].get<double>(), 1e-8);
  EXPECT_TRUE(j["error"].is_null());
  EXPECT_FALSE(j["velocity_rescaled"].get<bool>());
  std::istringstream in(slurp(csv));
  std::string line;
  int rows = 0;
  std::getline(in, line);
  EXPECT_EQ(line, "s,x0,x1,x2,x3,V0,V1,V2,V3,norm_residual");
  while (std::getline(in, line)) ++rows;
  EXPECT_EQ(rows, 21);
}

TEST_F(Cli, WorldlineRescalesVelocity) {
  auto r = run("worldline --spacetime minkowski --x0 0,1,0,0 --v0 2,0,0,0 --steps 10 --out " +
               path("t.csv"));
  ASSERT_EQ(r.code, 0);
  auto j = json::parse(r.out);
  EXPECT_TRUE(j["velocity_rescaled"].get<bool>());
  EXPECT_EQ(j["initial_norm"].get<double>(), 4.0);
  EXPECT_EQ(j["initial_state"]["V"][0].get<double>(), 1.0);
}

TEST_F(Cli, WorldlineOnlyNeedsAValidStartingPoint) {
  // With M = 2 the default radial axis starts inside the horizon; the start is outside.
  auto csv = path("t.csv");
  EXPECT_EQ(run("worldline --spacetime schwarzschild --param M=2 --x0 0,20,1.5,0 --v0 1,0,0,0.01 "
                "--steps 10 --out " + csv).code,
            0);
  EXPECT_EQ(run("worldline --spacetime schwarzschild --param M=2 --x0 0,3,1.5,0 --v0 1,0,0,0 "
                "--steps 10 --out " + csv).code,
            2);
}

TEST_F(Cli, WorldlineLeavingTheDomainExitsOne) {
  auto r = run("worldline --spacetime schwarzschild --x0 0,3,1,0 --v0 1,-0.2,0,0 --ds 0.05 "
               "--steps 10000 --out " + path("t.csv"));
  EXPECT_EQ(r.code, 1);
  auto j = json::parse(r.out);
  EXPECT_TRUE(j["error"].is_string());
}

}  // namespace
