#include <gtest/gtest.h>
#include <json.hpp>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out;
};

Run run(const std::string& args) {
  const fs::path out = fs::temp_directory_path() / ("layercode_cli_" + std::to_string(::getpid()) + ".out");
  const std::string cmd = std::string(LAYERCODE_CLI) + " " + args + " > " + out.string() + " 2>&1";
  const int status = std::system(cmd.c_str());
  std::ifstream in(out);
  std::stringstream ss;
  ss << in.rdbuf();
  fs::remove(out);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, ss.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("layercode_cli_" + std::to_string(::getpid()) + "_" +
            ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string at(const std::string& name) const { return (dir_ / name).string(); }
  fs::path dir_;
};

std::size_t layer_count(const std::string& geometry) { return json::parse(geometry).at("layers").size(); }

}  // namespace

TEST_F(Cli, BuildLayerCounts) {
  ASSERT_EQ(run("build --builtin steane --c 2 --output " + at("steane")).code, 0);
  EXPECT_EQ(layer_count(slurp(at("steane/geometry.json"))), 13u);
  ASSERT_EQ(run("build --builtin rep3 --c 2 --output " + at("rep3")).code, 0);
  EXPECT_EQ(layer_count(slurp(at("rep3/geometry.json"))), 5u);
}

TEST_F(Cli, ManifestDigestsMatchFiles) {
  ASSERT_EQ(run("build --builtin c422 --output " + at("c422")).code, 0);
  auto m = json::parse(slurp(at("c422/manifest.json")));
  EXPECT_EQ(m.at("subcommand"), "build");
  EXPECT_EQ(m.at("parameters").at("c"), 2);
  for (const auto& [file, digest] : m.at("outputs").items()) {
    ASSERT_TRUE(fs::exists(at("c422/" + file))) << file;
    EXPECT_EQ(digest.get<std::string>().size(), 64u);
  }
  // Matrix Market files carry the pattern header.
  EXPECT_EQ(slurp(at("c422/hx.mtx")).rfind("%%MatrixMarket matrix coordinate pattern general", 0), 0u);
}

TEST_F(Cli, MalformedJsonIsInputError) {
  std::ofstream(at("bad.json")) << "{\"n\": 3,";
  auto r = run("build --input " + at("bad.json") + " --output " + at("out"));
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.out.find("malformed JSON"), std::string::npos);
}

TEST_F(Cli, InvalidCodeIsInputError) {
  std::ofstream(at("anti.json")) << R"({"n": 1, "hx": [[0]], "hz": [[0]]})";
  EXPECT_EQ(run("build --input " + at("anti.json") + " --output " + at("out")).code, 2);
}

TEST_F(Cli, ShippedGoldenVerifiesAtFullLevel) {
  auto r = run(std::string("verify --level full --input ") + LAYERCODE_DATA + "/steane/layer_code.json");
  EXPECT_EQ(r.code, 0) << r.out;
  auto j = json::parse(r.out);
  EXPECT_TRUE(j.at("pass").get<bool>());
  EXPECT_EQ(j.at("correctability").at("failed").at("value"), 0);
}

TEST_F(Cli, GoldenIsReproduced) {
  ASSERT_EQ(run("build --builtin steane --c 2 --output " + at("steane")).code, 0);
  EXPECT_EQ(slurp(at("steane/layer_code.json")), slurp(std::string(LAYERCODE_DATA) + "/steane/layer_code.json"));
  EXPECT_EQ(slurp(at("steane/manifest.json")), slurp(std::string(LAYERCODE_DATA) + "/steane/manifest.json"));
}

TEST_F(Cli, FlippedSupportBitFailsCommutation) {
  auto j = json::parse(slurp(std::string(LAYERCODE_DATA) + "/steane/layer_code.json"));
  auto& support = j["x_checks"][0]["support"];
  const auto first = support[0].get<std::size_t>();
  support[0] = first == 0 ? 1 : first - 1;  // move one qubit to its neighbour
  std::ofstream(at("flip.json")) << j.dump();
  auto r = run("verify --input " + at("flip.json"));
  EXPECT_EQ(r.code, 1);
  auto rep = json::parse(r.out);
  EXPECT_FALSE(rep.at("structure").at("commutes").get<bool>());
}

TEST_F(Cli, WeightSevenCheckFailsWeightBound) {
  auto j = json::parse(slurp(std::string(LAYERCODE_DATA) + "/steane/layer_code.json"));
  auto extra = j["z_checks"][0];
  extra["support"] = {0, 1, 2, 3, 4, 5, 6};
  j["z_checks"].push_back(extra);
  std::ofstream(at("w7.json")) << j.dump();
  auto r = run("verify --input " + at("w7.json"));
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find("weight 7 > 6"), std::string::npos);
}

TEST_F(Cli, AnalyzeDistanceOnRepTwo) {
  ASSERT_EQ(run("build --builtin rep2 --output " + at("rep2")).code, 0);
  auto r = run("analyze --distance --seed 0 --cutoff 16 --input " + at("rep2/layer_code.json"));
  ASSERT_EQ(r.code, 0) << r.out;
  auto d = json::parse(r.out).at("distance");
  for (const char* t : {"X", "Z"}) {
    EXPECT_EQ(d.at(t).at("lower").at("value"), d.at(t).at("upper").at("value"));
    EXPECT_EQ(d.at(t).at("lower").at("mode"), "exact");
  }
}

TEST_F(Cli, AnalyzeBarrierOnRepThree) {
  ASSERT_EQ(run("build --builtin rep3 --output " + at("rep3")).code, 0);
  auto r = run("analyze --barrier --input " + at("rep3/layer_code.json"));
  ASSERT_EQ(r.code, 0);
  auto b = json::parse(r.out).at("barrier").at("X");
  EXPECT_EQ(b.at("input_exact").at("barrier").at("value"), 1);
  EXPECT_LE(b.at("layer_sweep")[0].at("barrier").at("value").get<int>(), 2);
  EXPECT_EQ(b.at("layer_sweep")[0].at("barrier").at("mode"), "upper-bound");
}

TEST_F(Cli, BudgetRefusalIsTaggedUnknown) {
  ASSERT_EQ(run("build --builtin steane --output " + at("steane")).code, 0);
  auto r = run("analyze --distance --budget 10 --input " + at("steane/layer_code.json"));
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(json::parse(r.out).at("distance").at("X").at("lower").at("mode"), "unknown");
}

TEST_F(Cli, UnknownTaskIsUsageError) {
  ASSERT_EQ(run("build --builtin rep3 --output " + at("rep3")).code, 0);
  EXPECT_EQ(run("analyze --entropy --input " + at("rep3/layer_code.json")).code, 2);
  EXPECT_EQ(run("analyze --input " + at("rep3/layer_code.json")).code, 2);
}

TEST_F(Cli, ExportGeometry) {
  ASSERT_EQ(run("build --builtin shor --output " + at("shor")).code, 0);
  ASSERT_EQ(run("export-geometry --input " + at("shor/layer_code.json") + " --output " + at("g.json")).code, 0);
  auto g = json::parse(slurp(at("g.json")));
  EXPECT_EQ(g.at("layers").size(), 17u);
  std::map<std::string, std::size_t> kinds;
  for (const auto& l : g.at("defect_lines")) ++kinds[l.at("kind").get<std::string>()];
  EXPECT_GT(kinds["nontrivialY"], 0u);

  ASSERT_EQ(run("build --builtin rep3 --output " + at("rep3")).code, 0);
  auto r = run("export-geometry --input " + at("rep3/layer_code.json"));
  auto rg = json::parse(r.out);
  EXPECT_EQ(rg.at("layers").size(), 5u);
  std::size_t z = 0;
  for (const auto& l : rg.at("defect_lines")) {
    const auto& a = l.at("from");
    const auto& b = l.at("to");
    EXPECT_EQ(a[0], b[0]);
    EXPECT_EQ(a[1], b[1]);  // all run along z
    ++z;
  }
  EXPECT_EQ(z, 4u);
}

TEST_F(Cli, EmptyCodeGivesEmptyGeometry) {
  std::ofstream(at("empty.json")) << R"({"name": "empty", "n": 0, "hx": [], "hz": []})";
  ASSERT_EQ(run("build --input " + at("empty.json") + " --output " + at("e")).code, 0);
  auto r = run("export-geometry --input " + at("e/layer_code.json"));
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(json::parse(r.out).at("layers").empty());
}

TEST_F(Cli, PipelineIsByteIdentical) {
  for (const char* sub : {"a", "b"}) {
    ASSERT_EQ(run("build --builtin c422 --seed 3 --output " + at(sub)).code, 0);
  }
  for (const char* f : {"layer_code.json", "hx.mtx", "hz.mtx", "geometry.json", "manifest.json"})
    EXPECT_EQ(slurp(at(std::string("a/") + f)), slurp(at(std::string("b/") + f))) << f;
  auto a = run("analyze --distance --barrier --relations --seed 3 --input " + at("a/layer_code.json"));
  auto b = run("analyze --distance --barrier --relations --seed 3 --input " + at("b/layer_code.json"));
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
}
