#include "holocurve/cli/config.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "holocurve/cli/commands.hpp"
#include "holocurve/cli/suites.hpp"
#include "holocurve/errors.hpp"

namespace holocurve::cli {
namespace {

using nlohmann::json;
namespace fs = std::filesystem;

JobConfig parse(const char* text) { return parse_config(json::parse(text), "/base"); }

TEST(ComplexFromJson, AcceptedForms) {
  EXPECT_EQ(complex_from_json(json(1.5)), Complex(1.5, 0));
  EXPECT_EQ(complex_from_json(json::array({1, -2})), Complex(1, -2));
  EXPECT_EQ(complex_from_json(json("0.5-2i")), Complex(0.5, -2));
  EXPECT_THROW(complex_from_json(json("z0")), ConfigError);
  EXPECT_THROW(complex_from_json(json::array({1, 2, 3})), ConfigError);
  EXPECT_THROW(complex_from_json(json(true)), ConfigError);
}

TEST(ParseConfig, DefaultsAndPaths) {
  const auto c = parse(R"({"phi": "f.field", "xi": [1, [0, 2]]})");
  EXPECT_EQ(c.phi_path, fs::path("/base/f.field"));
  ASSERT_EQ(c.xi.size(), 2u);
  EXPECT_EQ(c.xi[1], Complex(0, 2));
  EXPECT_EQ(c.grid_nodes, 201u);
  EXPECT_EQ(c.tol, 1e-12);
  EXPECT_EQ(c.seed, 0u);
  EXPECT_FALSE(c.dphi_path);
}

TEST(ParseConfig, AbsolutePathsKept) {
  EXPECT_EQ(parse(R"({"phi": "/abs/f.field"})").phi_path, fs::path("/abs/f.field"));
}

TEST(ParseConfig, Overrides) {
  const auto c = parse(R"({"interval": {"t0": 1, "A": 0.25}, "norm_p": 1, "contour": {"m_nodes": 32, "radius": 0.25},
                           "grid_nodes": 51, "tol": 1e-10, "max_iter": 9, "seed": 42, "suites": ["chi"]})");
  EXPECT_EQ(*c.t0, 1.0);
  EXPECT_EQ(*c.half_width, 0.25);
  EXPECT_EQ(*c.norm_p, 1.0);
  EXPECT_EQ(c.contour().m_nodes(), 32u);
  EXPECT_EQ(c.solve_options().grid_nodes, 51u);
  EXPECT_EQ(c.solve_options().max_iter, 9u);
  EXPECT_EQ(c.seed, 42u);
  EXPECT_EQ(c.suites, std::vector<std::string>{"chi"});
}

TEST(ParseConfig, Rejections) {
  for (const char* bad : {R"([])", R"({"bogus": 1})", R"({"grid_nodes": 4})", R"({"grid_nodes": -3})",
                          R"({"tol": 0})", R"({"tol": "small"})", R"({"norm_p": 0.5})", R"({"interval": {"t0": 0}})",
                          R"({"interval": {"t0": 0, "A": -1}})", R"({"contour": {"m_nodes": 4}})",
                          R"({"contour": {"radius": 2}})", R"({"max_iter": 0})", R"({"xi": [1], "dxi": [1, 2]})",
                          R"({"dimension": 2, "xi": [1]})", R"({"suites": "all"})", R"({"phi": 3})"}) {
    EXPECT_THROW(parse(bad), ConfigError) << bad;
  }
}

TEST(ConfigEcho, StableAndComplete) {
  const auto c = parse(R"({"phi": "f.field", "xi": ["1+i"], "seed": 9})");
  const json echo = to_json(c);
  EXPECT_EQ(echo.dump(), to_json(c).dump());
  EXPECT_EQ(echo["seed"], 9);
  EXPECT_EQ(echo["xi"][0][1], 1.0);
  for (const char* key : {"dimension", "norm_p", "interval", "grid_nodes", "contour", "tol", "max_iter", "phi",
                          "dphi", "xi", "dxi", "suites", "output", "seed"}) {
    EXPECT_TRUE(echo.contains(key)) << key;
  }
}

class TempDir : public ::testing::Test {
 protected:
  void SetUp() override {
    dir = fs::temp_directory_path() /
          ("holocurve_cfg_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir);
    fs::create_directories(dir);
  }
  void TearDown() override { fs::remove_all(dir); }
  void write(const fs::path& name, const std::string& text) { std::ofstream(dir / name) << text; }
  fs::path dir;
};

TEST_F(TempDir, LoadFieldAppliesOverrides) {
  write("f.field", "z0\ndomain { t0 = 0, A = 1, center = [2], radius = 1 }\n");
  write("c.json", R"({"phi": "f.field", "interval": {"t0": 3, "A": 0.5}, "norm_p": 1})");
  const auto c = load_config(dir / "c.json");
  const Field f = load_field(c.phi_path, c);
  EXPECT_EQ(f.domain().interval().t0(), 3.0);
  EXPECT_EQ(f.domain().interval().half_width(), 0.5);
  EXPECT_EQ(f.domain().norm_p(), 1.0);
  EXPECT_EQ(f.domain().center()[0], Complex(2, 0));
}

TEST_F(TempDir, LoadFieldErrors) {
  write("bad.field", "conj(z0)\ndomain { t0 = 0, A = 1, center = [0], radius = 1 }\n");
  JobConfig c;
  EXPECT_THROW(load_field(dir / "missing.field", c), ConfigError);
  EXPECT_THROW(load_field(dir / "bad.field", c), ParseError);
  write("ok.field", "z0\ndomain { t0 = 0, A = 1, center = [0], radius = 1 }\n");
  c.dimension = 2;
  EXPECT_THROW(load_field(dir / "ok.field", c), ConfigError);
}

TEST_F(TempDir, MalformedJson) {
  write("c.json", "{ \"phi\": ");
  EXPECT_THROW(load_config(dir / "c.json"), ConfigError);
  EXPECT_THROW(load_config(dir / "absent.json"), ConfigError);
}

TEST_F(TempDir, AtomicWriteReplacesContent) {
  write_atomic(dir / "sub" / "out.txt", "first");
  write_atomic(dir / "sub" / "out.txt", "second");
  std::ifstream in(dir / "sub" / "out.txt");
  std::stringstream ss;
  ss << in.rdbuf();
  EXPECT_EQ(ss.str(), "second");
  EXPECT_FALSE(fs::exists(dir / "sub" / "out.txt.tmp"));
}

TEST(BundledFields, ShippedFilesMatch) {
  for (const auto& b : bundled_fields()) {
    std::ifstream in(fs::path(HOLOCURVE_EXAMPLES_DIR) / "fields" / (b.name + ".field"));
    ASSERT_TRUE(in) << b.name;
    std::stringstream ss;
    ss << in.rdbuf();
    EXPECT_EQ(ss.str(), b.source) << b.name;
    EXPECT_EQ(parse_field_file(b.source).dimension(), b.xi.size());
  }
}

TEST(Suites, NamesAndCsv) {
  EXPECT_TRUE(is_suite_name("all"));
  EXPECT_TRUE(is_suite_name("chi"));
  EXPECT_FALSE(is_suite_name("ALL"));
  EXPECT_THROW(run_suite("bogus", SuiteOptions{}), ConfigError);
  const std::string csv = to_csv({{"a/b", "k=1", 1.5, 2.0, true}});
  EXPECT_EQ(csv, "case,parameter,observed,bound,pass\na/b,\"k=1\",1.500000e+00,2.000000e+00,true\n");
}

TEST(Suites, ChiSuiteDeterministicPerSeed) {
  const auto a = to_csv(run_suite("chi", SuiteOptions{7}));
  EXPECT_EQ(a, to_csv(run_suite("chi", SuiteOptions{7})));
  EXPECT_NE(a, to_csv(run_suite("chi", SuiteOptions{8})));
}

}  // namespace
}  // namespace holocurve::cli
