// End-to-end tests of the holocurve executable.

#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

const fs::path kExamples = HOLOCURVE_EXAMPLES_DIR;

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir = fs::temp_directory_path() /
          ("holocurve_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir);
    fs::create_directories(dir);
  }
  void TearDown() override { fs::remove_all(dir); }

  /// Runs the tool with `args`; stdout and stderr land in files under dir.
  int run(const std::string& args, const std::string& env = "") {
    const std::string cmd = env + " \"" HOLOCURVE_CLI_PATH "\" " + args + " > \"" + (dir / "stdout").string() +
                            "\" 2> \"" + (dir / "stderr").string() + "\"";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  }
  std::string example(const std::string& name) const { return "\"" + (kExamples / name).string() + "\""; }
  std::string out(const std::string& name) const { return "\"" + (dir / name).string() + "\""; }
  json read_json(const std::string& name) const { return json::parse(slurp(dir / name)); }
  json stderr_error() const { return json::parse(slurp(dir / "stderr")); }

  void write_config(const std::string& name, json cfg) {
    cfg["phi"] = (kExamples / cfg["phi"].get<std::string>()).string();
    if (cfg.contains("dphi")) cfg["dphi"] = (kExamples / cfg["dphi"].get<std::string>()).string();
    std::ofstream(dir / name) << cfg.dump();
  }

  fs::path dir;
};

TEST_F(Cli, SolveLinearField) {
  ASSERT_EQ(run("solve --config " + example("linear.json") + " --out " + out("r.json")), 0);
  const json r = read_json("r.json");
  EXPECT_EQ(r["command"], "solve");
  EXPECT_EQ(r["status"], "solved");
  EXPECT_TRUE(r["condition"]["ok"].get<bool>());
  EXPECT_LT(r["result"]["residual"].get<double>(), 1e-12);
  EXPECT_LT(r["result"]["contraction"].get<double>(), 1.0);
  EXPECT_EQ(r["artifact"]["version"], "0.1.0");
  EXPECT_EQ(r["seed"], 1);
  EXPECT_EQ(r["config"]["xi"][0][0], 1.0);
  const auto& t = r["solution"]["t"];
  const auto& y = r["solution"]["y"];
  ASSERT_EQ(t.size(), 201u);
  for (std::size_t k = 0; k < t.size(); k += 20) {
    EXPECT_NEAR(y[k][0][0].get<double>(), std::exp(0.5 * t[k].get<double>()), 1e-10);
  }
}

TEST_F(Cli, SolveWritesToStdoutWithoutOut) {
  ASSERT_EQ(run("solve --config " + example("linear.json")), 0);
  EXPECT_EQ(json::parse(slurp(dir / "stdout"))["status"], "solved");
}

TEST_F(Cli, SeedFlagOverridesConfig) {
  ASSERT_EQ(run("solve --config " + example("linear.json") + " --seed 99 --out " + out("r.json")), 0);
  EXPECT_EQ(read_json("r.json")["seed"], 99);
  EXPECT_EQ(read_json("r.json")["config"]["seed"], 99);
}

TEST_F(Cli, ReportsAreByteIdentical) {
  ASSERT_EQ(run("solve --config " + example("pendulum.json") + " --out " + out("a.json")), 0);
  const std::string first = slurp(dir / "a.json");
  ASSERT_EQ(run("solve --config " + example("pendulum.json") + " --out " + out("a.json"), "HOLOCURVE_THREADS=1"), 0);
  EXPECT_EQ(first, slurp(dir / "a.json"));
}

TEST_F(Cli, FailedConditionRecordedAndForceSolves) {
  EXPECT_EQ(run("solve --config " + example("steep.json") + " --out " + out("r.json")), 5);
  json r = read_json("r.json");
  EXPECT_FALSE(r["condition"]["ok"].get<bool>());
  EXPECT_EQ(r["status"], "condition-failed");
  EXPECT_EQ(stderr_error()["error"]["exit_code"], 5);

  EXPECT_EQ(run("solve --force --config " + example("steep.json") + " --out " + out("f.json")), 0);
  r = read_json("f.json");
  EXPECT_FALSE(r["condition"]["ok"].get<bool>());
  EXPECT_TRUE(r["condition"]["forced"].get<bool>());
  EXPECT_EQ(r["status"], "solved");
}

TEST_F(Cli, MissingFieldFileIsAConfigError) {
  std::ofstream(dir / "c.json") << R"({"phi": "nowhere.field", "xi": [0]})";
  EXPECT_EQ(run("solve --config " + out("c.json")), 2);
  const json e = stderr_error();
  EXPECT_EQ(e["error"]["kind"], "config");
  EXPECT_NE(e["error"]["message"].get<std::string>().find("nowhere.field"), std::string::npos);
}

TEST_F(Cli, MissingConfigIsAConfigError) {
  EXPECT_EQ(run("solve"), 2);
  EXPECT_EQ(run("solve --config " + out("absent.json")), 2);
}

TEST_F(Cli, ParseErrorCarriesPosition) {
  std::ofstream(dir / "bad.field") << "z0 + abs(z0)\ndomain { t0 = 0, A = 1, center = [0], radius = 1 }\n";
  std::ofstream(dir / "c.json") << R"({"phi": "bad.field", "xi": [0]})";
  EXPECT_EQ(run("solve --config " + out("c.json")), 2);
  const json e = stderr_error();
  EXPECT_EQ(e["error"]["kind"], "parse");
  EXPECT_EQ(e["error"]["line"], 1);
  EXPECT_EQ(e["error"]["column"], 6);
}

TEST_F(Cli, DomainErrorExitCode) {
  write_config("c.json", {{"phi", "fields/linear.field"}, {"xi", {5}}});
  EXPECT_EQ(run("solve --config " + out("c.json")), 3);
  EXPECT_EQ(stderr_error()["error"]["kind"], "domain");
}

TEST_F(Cli, ConvergenceErrorExitCode) {
  write_config("c.json", {{"phi", "fields/linear.field"}, {"xi", {1}}, {"max_iter", 2}});
  EXPECT_EQ(run("solve --config " + out("c.json")), 4);
  const json e = stderr_error();
  EXPECT_EQ(e["error"]["kind"], "convergence");
  EXPECT_EQ(e["error"]["iterations"], 2);
}

TEST_F(Cli, SensitivityInitialValueDirection) {
  ASSERT_EQ(run("sensitivity --config " + example("linear.json") + " --out " + out("s.json")), 0);
  const json r = read_json("s.json");
  EXPECT_LT(r["finite_difference"]["error"].get<double>(), 1e-6);
  EXPECT_TRUE(r["finite_difference"]["ok"].get<bool>());
  const auto& t = r["derivative"]["t"];
  const auto& v = r["derivative"]["v"];
  for (std::size_t k = 0; k < t.size(); k += 25) {
    EXPECT_NEAR(v[k][0][0].get<double>(), std::exp(0.5 * t[k].get<double>()), 1e-9);
  }
}

TEST_F(Cli, SensitivityFieldDirection) {
  ASSERT_EQ(run("sensitivity --config " + example("linear_dphi.json") + " --out " + out("s.json")), 0);
  const json r = read_json("s.json");
  const auto& t = r["derivative"]["t"];
  const auto& v = r["derivative"]["v"];
  for (std::size_t k = 0; k < t.size(); k += 25) {
    const double tk = t[k].get<double>();
    EXPECT_NEAR(v[k][0][0].get<double>(), 0.3 * tk * std::exp(0.5 * tk), 1e-7);
  }
}

TEST_F(Cli, SensitivityZeroDirection) {
  write_config("c.json", {{"phi", "fields/linear.field"}, {"xi", {1}}, {"dxi", {0}}});
  ASSERT_EQ(run("sensitivity --config " + out("c.json") + " --out " + out("s.json")), 0);
  const json r = read_json("s.json");
  for (const auto& v : r["derivative"]["v"]) {
    EXPECT_EQ(v[0][0], 0.0);
    EXPECT_EQ(v[0][1], 0.0);
  }
  EXPECT_EQ(r["finite_difference"]["error"], 0.0);
}

TEST_F(Cli, SensitivityThresholdBreachStillWritesReport) {
  write_config("c.json", {{"phi", "fields/pendulum.field"},
                          {"xi", {0.5, 0}},
                          {"dxi", {1, 0}},
                          {"interval", {{"t0", 0}, {"A", 0.2}}},
                          {"fd_threshold", 1e-300}});
  EXPECT_EQ(run("sensitivity --config " + out("c.json") + " --out " + out("s.json")), 5);
  const json r = read_json("s.json");
  EXPECT_FALSE(r["finite_difference"]["ok"].get<bool>());
  EXPECT_EQ(stderr_error()["error"]["kind"], "check");
}

TEST_F(Cli, VerifyUnknownSuite) {
  EXPECT_EQ(run("verify --suite everything"), 2);
  EXPECT_EQ(stderr_error()["error"]["exit_code"], 2);
}

TEST_F(Cli, VerifyContourSuitePasses) {
  ASSERT_EQ(run("verify --suite contour --out " + out("t.csv")), 0);
  std::istringstream csv(slurp(dir / "t.csv"));
  std::string line;
  std::getline(csv, line);
  EXPECT_EQ(line, "case,parameter,observed,bound,pass");
  int zeta_rows = 0;
  while (std::getline(csv, line)) {
    EXPECT_TRUE(line.ends_with(",true")) << line;
    zeta_rows += line.starts_with("contour/zeta_power") ? 1 : 0;
  }
  EXPECT_EQ(zeta_rows, 17);
}

TEST_F(Cli, VerifyChiDeterministic) {
  ASSERT_EQ(run("verify --suite chi --seed 3 --out " + out("a.csv")), 0);
  ASSERT_EQ(run("verify --suite chi --seed 3 --out " + out("b.csv"), "HOLOCURVE_THREADS=2"), 0);
  EXPECT_EQ(slurp(dir / "a.csv"), slurp(dir / "b.csv"));
}

TEST_F(Cli, VerifyUsesConfigSuites) {
  std::ofstream(dir / "v.json") << R"({"suites": ["chi"], "seed": 5})";
  ASSERT_EQ(run("verify --config " + out("v.json") + " --out " + out("t.csv")), 0);
  const std::string csv = slurp(dir / "t.csv");
  EXPECT_NE(csv.find("chi/"), std::string::npos);
  EXPECT_EQ(csv.find("contour/"), std::string::npos);
}

TEST_F(Cli, ChiWitness) {
  ASSERT_EQ(run("chi-witness --target 30 --out " + out("w.json")), 0);
  const json w = read_json("w.json");
  EXPECT_EQ(w["index"], 83);
  EXPECT_GT(w["chi"][0].get<double>(), 30.0);
  EXPECT_LT(w["norm"]["p2"].get<double>(), 1.0);
}

TEST_F(Cli, ChiWitnessUnreachable) {
  EXPECT_EQ(run("chi-witness --target 1e6 --dimension 100"), 2);
  EXPECT_EQ(stderr_error()["error"]["suggested_dimension"], 2718283);
}

TEST_F(Cli, UsageErrors) {
  EXPECT_EQ(run(""), 2);
  EXPECT_EQ(run("frobnicate"), 2);
  EXPECT_EQ(run("--version"), 0);
}

}  // namespace
