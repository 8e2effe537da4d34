// Copyright 2026 The Horoshift Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace {

namespace fs = std::filesystem;
using Json = nlohmann::json;

std::string Config(const std::string& rel) { return std::string(HORO_SOURCE_DIR) + "/configs/" + rel; }

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    dir_ = fs::temp_directory_path() / ("horo_cli_" + std::string(info->name()) + "_" + std::to_string(::getpid()));
    fs::remove_all(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  // Runs `horo <args> --out <dir>/<sub>` and returns the exit status.
  int Horo(const std::string& args, const std::string& sub = "out") {
    const std::string cmd = std::string(HORO_CLI_PATH) + " " + args + " --out " + (dir_ / sub).string() +
                            " > " + (dir_ / (sub + ".log")).string() + " 2>&1";
    fs::create_directories(dir_);
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  }

  std::string Read(const std::string& rel) const {
    std::ifstream in(dir_ / rel, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }

  Json ReadJson(const std::string& rel) const { return Json::parse(Read(rel)); }

  fs::path dir_;
};

std::string Fnv1a(const std::string& bytes) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

TEST_F(CliTest, BallAndManifest) {
  ASSERT_EQ(Horo("ball --group " + Config("groups/z2_star_z.json") + " --radius 2"), 0);
  EXPECT_EQ(ReadJson("out/ball.json")["vertices"], 33);
  const Json manifest = ReadJson("out/manifest.json");
  EXPECT_EQ(manifest["subcommand"], "ball");
  EXPECT_EQ(manifest["parameters"]["radius"], 2);
  ASSERT_FALSE(manifest["outputs"].empty());
  for (const Json& out : manifest["outputs"]) {
    EXPECT_EQ(out["fnv1a64"], Fnv1a(Read("out/" + out["file"].get<std::string>()))) << out["file"];
  }
  EXPECT_TRUE(manifest.contains("wall_time_ms"));
  EXPECT_TRUE(manifest["inputs"].contains("group"));
}

TEST_F(CliTest, RadiusZeroBall) {
  ASSERT_EQ(Horo("ball --group " + Config("groups/f2.json") + " --radius 0"), 0);
  EXPECT_EQ(ReadJson("out/ball.json")["vertices"], 1);
  EXPECT_NE(Read("out/ball.dot").find("digraph"), std::string::npos);
}

TEST_F(CliTest, FormatSelectsArtifacts) {
  ASSERT_EQ(Horo("ball --group " + Config("groups/z2.json") + " --radius 1 --format csv"), 0);
  EXPECT_TRUE(fs::exists(dir_ / "out/distances.csv"));
  EXPECT_FALSE(fs::exists(dir_ / "out/ball.dot"));
  EXPECT_TRUE(fs::exists(dir_ / "out/manifest.json"));
}

TEST_F(CliTest, ConfigErrorsExitTwo) {
  EXPECT_EQ(Horo("ball --group " + Config("groups/missing.json") + " --radius 1"), 2);
  EXPECT_EQ(Horo("ball --radius 1"), 2);
  EXPECT_EQ(Horo("ball --group " + Config("groups/z2.json") + " --radius 1 --format xml"), 2);
  EXPECT_EQ(Horo("no-such-subcommand"), 2);
  fs::create_directories(dir_);
  std::ofstream(dir_ / "broken.json") << "{\"factors\": [";
  EXPECT_EQ(Horo("ball --group " + (dir_ / "broken.json").string() + " --radius 1"), 2);
  EXPECT_EQ(Horo("morse-test --group " + Config("groups/z2.json") + " --radius 3 --geodesic \"a a\""), 2);
}

TEST_F(CliTest, PreconditionExitsThree) {
  const std::string ray = Config("rays/a_axis.json");
  EXPECT_EQ(Horo("horosphere --group " + Config("groups/z2.json") + " --radius 4 --ray " + ray +
                 " --other-ray " + ray),
            3);
  EXPECT_NE(Read("out.log").find("horo:"), std::string::npos);
}

TEST_F(CliTest, ResourceCapExitsFour) {
  EXPECT_EQ(Horo("ball --group " + Config("groups/z2_star_z.json") + " --radius 6 --budget-vertices 100"), 4);
  EXPECT_NE(Read("out.log").find("cap"), std::string::npos);
}

TEST_F(CliTest, FieldPipeline) {
  const std::string group = " --group " + Config("groups/z2.json") + " --radius 4";
  ASSERT_EQ(Horo("busemann" + group + " --ray " + Config("rays/a_axis.json") + " --margin 1", "b"), 0);
  const Json report = ReadJson("b/report.json");
  EXPECT_TRUE(report["lipschitz"]["pass"].get<bool>());
  EXPECT_TRUE(report["distance_like"]["pass"].get<bool>());
  EXPECT_EQ(report["vertices"], 41);

  const std::string field = (dir_ / "b/field.csv").string();
  ASSERT_EQ(Horo("derivative" + group + " --field " + field, "d"), 0);
  ASSERT_EQ(Horo("integrate" + group + " --derivative " + (dir_ / "d/derivative.csv").string(), "i"), 0);
  EXPECT_TRUE(ReadJson("i/report.json")["round_trip_equal"].get<bool>());
  EXPECT_EQ(Read("i/field.csv"), Read("b/field.csv"));

  ASSERT_EQ(Horo("shift-check" + group + " --field " + field + " --shift \"a b'\" --patterns " +
                     Config("patterns/z2_antisymmetry.json"),
                 "s"),
            0);
  const Json shift = ReadJson("s/report.json");
  EXPECT_TRUE(shift["equivariance"]["equal"].get<bool>());
  EXPECT_TRUE(shift["forbidden_scan"]["matches"].empty());

  ASSERT_EQ(Horo("gradient" + group + " --field " + field + " --start \"b b\" --policy all", "g"), 0);
  EXPECT_TRUE(fs::exists(dir_ / "g/manifest.json"));
}

TEST_F(CliTest, MorseAndContraction) {
  ASSERT_EQ(Horo("morse-test --group " + Config("groups/z2.json") +
                 " --radius 6 --geodesic \"a a a\" --gauge 3/1:0 --budget-qg 3 --triangle \"1;a a a;b b b\""),
            0);
  ASSERT_EQ(Horo("contraction-test --group " + Config("groups/z2_star_z.json") + " --ray " +
                     Config("rays/increasing_powers.json") + " --length 27 --radii 1,2,3",
                 "c"),
            0);
  const std::string text = Read("c/report.json");
  EXPECT_NE(text.find("strictly_growing"), std::string::npos);
  EXPECT_TRUE(ReadJson("c/report.json")["strictly_growing"].get<bool>());
}

TEST_F(CliTest, HorosphereVerdicts) {
  ASSERT_EQ(Horo("horosphere --group " + Config("groups/z2.json") + " --radius 10 --ray " +
                     Config("rays/a_axis.json") + " --horizon 6",
                 "z"),
            0);
  EXPECT_NE(Read("z/horospheres.csv").find("witness"), std::string::npos);
  ASSERT_EQ(Horo("horosphere --group " + Config("groups/f2.json") + " --radius 6 --ray " +
                     Config("rays/a_axis.json") + " --horizon 6",
                 "f"),
            0);
  EXPECT_EQ(Read("f/horospheres.csv").find("witness"), std::string::npos);
}

}  // namespace
