#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Outcome {
  int code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("logbm_cli_" + std::to_string(::getpid()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string file(const std::string& name, const std::string& content) {
    const fs::path p = dir_ / name;
    std::ofstream(p, std::ios::binary) << content;
    return p.string();
  }

  Outcome run(const std::string& args, const std::string& env = "") {
    const fs::path out = dir_ / "stdout.txt";
    const fs::path err = dir_ / "stderr.txt";
    const std::string cmd =
        env + " " + LOGBM_CLI + " " + args + " >" + out.string() + " 2>" + err.string();
    const int status = std::system(cmd.c_str());
    Outcome r;
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = slurp(out);
    r.err = slurp(err);
    return r;
  }

  fs::path dir_;
};

bool contains(const std::string& text, const std::string& needle) { return text.find(needle) != std::string::npos; }

}  // namespace

TEST_F(Cli, VerifySemiNormEquality) {
  const std::string k = file("cube2.json", R"({"kind":"cube","dim":2})");
  const Outcome r = run("verify " + k + " norm=max:1,0 --checks theorem_1_4");
  ASSERT_EQ(r.code, 0) << r.err;
  const json doc = json::parse(r.out);
  EXPECT_EQ(doc["schemaVersion"], 1);
  EXPECT_EQ(doc["reports"][0]["checkName"], "seminorm_surface");
  EXPECT_EQ(doc["reports"][0]["equality"], true);
  EXPECT_EQ(doc["reports"][0]["lhs"], "4");

  const std::string norm = file("norm.json", R"({"form":"sum","vectors":[["1","0"],["0","1"]]})");
  const Outcome s = run("verify " + k + " " + norm + " --checks seminorm_surface --format table");
  ASSERT_EQ(s.code, 0) << s.err;
  EXPECT_TRUE(contains(s.out, "seminorm_surface"));
}

TEST_F(Cli, ParseErrorsExitTwoAndNameTheField) {
  const std::string bad = file("bad.json", R"({"kind":"vertices","points":[["1/0","1"],["0","1"]]})");
  const Outcome r = run("verify " + bad + " norm=max:1,0");
  EXPECT_EQ(r.code, 2);
  EXPECT_TRUE(contains(r.err, "body.points[0][0]")) << r.err;

  const std::string k = file("cube2.json", R"({"kind":"cube","dim":2})");
  EXPECT_EQ(run("verify " + k + " norm=max:1,0 --bogus").code, 2);
  const Outcome unknown = run("verify " + k + " norm=max:1,0 --checks bogus");
  EXPECT_EQ(unknown.code, 2);
  EXPECT_TRUE(contains(unknown.err, "--checks"));
  EXPECT_EQ(run("verify " + k + " norm=max:1,0 --mode fuzzy").code, 2);
  EXPECT_EQ(run("campaign --dim 2 --trials x").code, 2);
  EXPECT_EQ(run("verify " + (dir_ / "missing.json").string()).code, 2);
  const Outcome cfg = run("campaign " + file("cfg.json", R"({"dims":[2],"trails":3})"));
  EXPECT_EQ(cfg.code, 2);
  EXPECT_TRUE(contains(cfg.err, "config.trails")) << cfg.err;
  EXPECT_EQ(run("demo nothing").code, 2);
}

TEST_F(Cli, ProbeCandidatesDoNotChangeTheExitCode) {
  const std::string k = file("cube3.json", R"({"kind":"cube","dim":3})");
  const Outcome r = run("verify " + k + " --checks pair_probe --v 1,0,0 --w 0,1,0");
  ASSERT_EQ(r.code, 0) << r.err;
  const json doc = json::parse(r.out);
  const json& report = doc["reports"][0];
  EXPECT_EQ(report["status"], "counterexample-candidate");

  // Replaying the record reproduces it; a tampered record exits 3.
  json record = {{"checkName", "pair_probe"}, {"instance", report["instance"]}, {"report", report}};
  const Outcome same = run("verify --replay " + file("record.json", record.dump()));
  EXPECT_EQ(same.code, 0) << same.err;
  EXPECT_EQ(json::parse(same.out)["replayIdentical"], true);
  record["report"]["lhs"] = "7";
  const Outcome tampered = run("verify --replay " + file("tampered.json", record.dump()));
  EXPECT_EQ(tampered.code, 3);
  EXPECT_EQ(json::parse(tampered.out)["replayIdentical"], false);
}

TEST_F(Cli, MixedVolumes) {
  const std::string c2 = file("c2.json", R"({"kind":"cube","dim":2})");
  const std::string c3 = file("c3.json", R"({"kind":"cube","dim":3})");
  const std::string seg = file("seg.json", R"({"kind":"segment","vector":["1","0"]})");
  const std::string sq = file("sq.json", R"({"kind":"square2d","dim":3,"i":1,"j":2})");
  EXPECT_TRUE(contains(run("mixed-volumes " + c2 + " " + c2 + " --format table").out, "4, 4, 4"));
  EXPECT_EQ(json::parse(run("mixed-volumes " + c2 + " " + seg).out)["mixedVolumes"][2], "0");
  EXPECT_EQ(json::parse(run("mixed-volumes " + c3 + " " + sq).out)["mixedVolumes"][2], "8/3");
  const Outcome f = run("mixed-volumes " + c3 + " " + sq + " --mode float");
  ASSERT_EQ(f.code, 0) << f.err;
  EXPECT_NEAR(json::parse(f.out)["mixedVolumes"][2].get<double>(), 8.0 / 3, 1e-9);
}

TEST_F(Cli, CampaignOutputIsByteIdentical) {
  const std::string args = "campaign --dim 2,3 --trials 6 --seed 5 --checks theorem_1_4,segment_logbm";
  const Outcome a = run(args);
  const Outcome b = run(args, "LOGBM_THREADS=1");
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  EXPECT_FALSE(contains(a.out, "wallTimeSeconds"));
  EXPECT_TRUE(contains(run(args + " --timing").out, "wallTimeSeconds"));

  const std::string out = (dir_ / "report.json").string();
  ASSERT_EQ(run(args + " --out " + out).code, 0);
  EXPECT_EQ(slurp(out), a.out);

  const std::string cfg = file("cfg.json", R"({"dims":[2],"trialsPerDim":6,"seed":5,"checks":["theorem_1_7"]})");
  const Outcome c = run("campaign " + cfg);
  ASSERT_EQ(c.code, 0) << c.err;
  EXPECT_EQ(json::parse(c.out)["summary"]["perCheck"]["segment_logbm"]["trials"], 6);
}

TEST_F(Cli, Demos) {
  const Outcome three = run("demo false-inequality --dim 3 --format table");
  EXPECT_EQ(three.code, 0);
  EXPECT_TRUE(contains(three.out, "violated: 2 > 3/2")) << three.out;
  EXPECT_TRUE(contains(run("demo false-inequality --dim 2 --format table").out, "holds: 2 <= 2"));
  const Outcome cube = run("demo cube-remark --dim 2 --format table");
  EXPECT_EQ(cube.code, 0);
  EXPECT_TRUE(contains(cube.out, "cube_mixed_identity: 8 = 8"));
  const Outcome hex = run("demo hexagon --format table");
  EXPECT_EQ(hex.code, 0);
  EXPECT_TRUE(contains(hex.out, "split observed"));
}
