#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "cli.hpp"

namespace flowpoly::cli {
namespace {

using nlohmann::json;

const std::filesystem::path kData = FLOWPOLY_DATA_DIR;

struct Outcome {
  int code;
  std::string out;
  std::string err;
  json doc() const { return json::parse(out); }
};

Outcome invoke(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string graph(const std::string& name) { return (kData / (name + ".json")).string(); }

TEST(Cli, Info) {
  Outcome r = invoke({"info", graph("b4")});
  ASSERT_EQ(r.code, kOk) << r.err;
  EXPECT_EQ(r.doc()["graph"]["cycle_rank"], 3);
  EXPECT_EQ(r.doc()["graph"]["bridgeless"], true);
  r = invoke({"info", graph("single_edge")});
  EXPECT_EQ(r.doc()["graph"]["bridges"], json::array({0}));
  EXPECT_EQ(r.doc()["graph"]["bridgeless"], false);
  r = invoke({"info", graph("edgeless")});
  EXPECT_EQ(r.doc()["graph"]["cycle_rank"], 0);
}

TEST(Cli, ModularAll) {
  const Outcome r = invoke({"modular", graph("b4"), "--method", "all"});
  ASSERT_EQ(r.code, kOk) << r.err;
  EXPECT_EQ(r.doc()["poly"]["coeffs"], json({"-3/1", "6/1", "-4/1", "1/1"}));
  EXPECT_EQ(r.doc()["agree"], true);
  EXPECT_EQ(r.doc()["reports"].size(), 4U);
  EXPECT_FALSE(r.doc()["reports"][0].contains("wall_ms"));
}

TEST(Cli, TimingIsOptIn) {
  const Outcome r = invoke({"modular", graph("b2"), "--timing"});
  ASSERT_EQ(r.code, kOk);
  EXPECT_TRUE(r.doc()["reports"][0].contains("wall_ms"));
}

TEST(Cli, IntegralWithDual) {
  const Outcome r = invoke({"integral", graph("b4"), "--method", "all", "--dual"});
  ASSERT_EQ(r.code, kOk) << r.err;
  EXPECT_EQ(r.doc()["poly"]["coeffs"], json({"-14/1", "86/3", "-20/1", "16/3"}));
  EXPECT_EQ(r.doc()["dual"]["modular_dual"]["coeffs"], json({"3/1", "6/1", "4/1", "1/1"}));
  EXPECT_EQ(r.doc()["dual"]["classes"].size(), 3U);
}

TEST(Cli, OrientationsAndClasses) {
  const Outcome r = invoke({"orientations", graph("b4"), "--totally-cyclic", "--classes"});
  ASSERT_EQ(r.code, kOk) << r.err;
  EXPECT_EQ(r.doc()["count"], 14);
  EXPECT_EQ(r.doc()["class_sizes"], json({4, 6, 4}));
  const Outcome all = invoke({"orientations", graph("b4")});
  EXPECT_EQ(all.doc()["count"], 16);
}

TEST(Cli, Local) {
  const Outcome r = invoke({"local", graph("b2"), "--orientation", "01"});
  ASSERT_EQ(r.code, kOk) << r.err;
  EXPECT_EQ(r.doc()["open"]["coeffs"], json({"-1/1", "1/1"}));
  EXPECT_EQ(invoke({"local", graph("b2"), "--orientation", "011"}).code, kUsage);
}

TEST(Cli, Lift) {
  Outcome r = invoke({"lift", graph("b2"), "--orientation", "00", "--flow", "[1,2]", "--mod", "3"});
  ASSERT_EQ(r.code, kOk) << r.err;
  EXPECT_EQ(r.doc()["flow"], json({1, -1}));
  r = invoke({"lift", graph("b2"), "--orientation", "00", "--flow", R"({"values":[1,2],"mod":3})"});
  ASSERT_EQ(r.code, kOk) << r.err;
  EXPECT_EQ(r.doc()["flow"], json({1, -1}));
  r = invoke({"lift", graph("b2"), "--orientation", "00", "--flow", "[1,1]", "--mod", "3"});
  EXPECT_EQ(r.code, kUsage);
  EXPECT_TRUE(r.doc().contains("error"));
}

TEST(Cli, VerifyAndTutte) {
  Outcome r = invoke({"verify", graph("b4"), "--qmax", "3"});
  ASSERT_EQ(r.code, kOk) << r.out;
  EXPECT_EQ(r.doc()["passed"], true);
  r = invoke({"tutte", graph("triangle")});
  EXPECT_EQ(r.doc()["text"], "x^2 + x + y");
}

TEST(Cli, TextFormat) {
  const Outcome r = invoke({"--format", "text", "modular", graph("b4")});
  ASSERT_EQ(r.code, kOk);
  EXPECT_NE(r.out.find("t^3 - 4*t^2 + 6*t - 3"), std::string::npos);
  const Outcome after = invoke({"modular", graph("b4"), "--format", "text"});
  EXPECT_EQ(after.out, r.out);
}

TEST(Cli, OutputDoesNotDependOnJobs) {
  const Outcome one = invoke({"integral", graph("k4"), "--method", "all", "--dual", "--jobs", "1"});
  const Outcome four = invoke({"integral", graph("k4"), "--method", "all", "--dual", "--jobs", "4"});
  ASSERT_EQ(one.code, kOk);
  EXPECT_EQ(one.out, four.out);
}

TEST(Cli, ErrorPaths) {
  Outcome r = invoke({"modular", graph("b4"), "--method", "fft"});
  EXPECT_EQ(r.code, kUsage);
  EXPECT_TRUE(r.doc().contains("error"));

  r = invoke({"info", (kData / "missing.json").string()});
  EXPECT_EQ(r.code, kUsage);
  EXPECT_EQ(r.doc()["kind"], "parse");

  r = invoke({"orientations", graph("b4"), "--max-edges", "3"});
  EXPECT_EQ(r.code, kResourceCap);
  EXPECT_EQ(r.doc()["kind"], "resource");

  r = invoke({"modular", graph("k4"), "--method", "subset", "--max-subsets", "16"});
  EXPECT_EQ(r.code, kResourceCap);

  r = invoke({});
  EXPECT_EQ(r.code, kUsage);

  const std::filesystem::path bad = std::filesystem::temp_directory_path() / "flowpoly_bad.json";
  {
    std::ofstream f(bad);
    f << "{\"vertices\": [\"u\"],\n \"edges\": [[\"u\", \"x\"]]}";
  }
  r = invoke({"info", bad.string()});
  EXPECT_EQ(r.code, kUsage);
  EXPECT_EQ(r.doc()["line"], 2);
  std::filesystem::remove(bad);
}

TEST(Cli, EdgeCapFromEnvironment) {
  ::setenv("FLOWPOLY_MAX_EDGES", "3", 1);
  const Outcome capped = invoke({"orientations", graph("b4")});
  ::setenv("FLOWPOLY_MAX_EDGES", "nope", 1);
  const Outcome bad = invoke({"orientations", graph("b4")});
  ::unsetenv("FLOWPOLY_MAX_EDGES");
  EXPECT_EQ(capped.code, kResourceCap);
  EXPECT_EQ(bad.code, kUsage);
  EXPECT_EQ(invoke({"orientations", graph("b4")}).code, kOk);
}

}  // namespace
}  // namespace flowpoly::cli
