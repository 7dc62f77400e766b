// Copyright 2026 The nhplan Authors
//
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

// Runs the nhplan executable end to end in a scratch directory.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>

#include "gtest/gtest.h"

namespace {

namespace fs = std::filesystem;

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("nhplan_cli_" +
            std::string(
                ::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
    std::ofstream(dir_ / "small.ini") << "[agent]\n"
                                         "hidden_units = 16\n"
                                         "batch_size = 32\n"
                                         "warmup_episodes = 3\n"
                                         "[episode]\n"
                                         "max_steps = 30\n"
                                         "[run]\n"
                                         "eval_episodes = 5\n";
  }
  void TearDown() override { fs::remove_all(dir_); }

  int Run(const std::string& args) {
    const std::string cmd = std::string(NHPLAN_CLI_PATH) + " " + args + " > " +
                            (dir_ / "stdout.txt").string() + " 2> " +
                            (dir_ / "stderr.txt").string();
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  }

  std::string Read(const fs::path& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }

  std::string Out(const std::string& sub) const {
    return (dir_ / sub).string();
  }

  fs::path dir_;
};

TEST_F(CliTest, TrainEvalAndScenarioSmoke) {
  ASSERT_EQ(Run("train --config " + Out("small.ini") +
                " --variant 2d --episodes 10 --out-dir " + Out("run")),
            0)
      << Read(dir_ / "stderr.txt");
  EXPECT_TRUE(fs::exists(dir_ / "run/2d/checkpoint.txt"));
  EXPECT_TRUE(fs::exists(dir_ / "run/2d/training_log.csv"));
  EXPECT_TRUE(fs::exists(dir_ / "run/2d/config.ini"));

  ASSERT_EQ(Run("eval --config " + Out("small.ini") + " --out-dir " +
                Out("run")),
            0)
      << Read(dir_ / "stderr.txt");
  EXPECT_TRUE(fs::exists(dir_ / "run/2d/eval_report.csv"));

  std::ofstream(dir_ / "two.scn") << "start 0 0 0 0 0\n"
                                     "goal 2 1 0.5 1\n"
                                     "goal 0 3 3 0\n";
  ASSERT_EQ(Run("scenario --config " + Out("small.ini") +
                " --variant 2d --out-dir " + Out("run") + " --scenario " +
                Out("two.scn")),
            0)
      << Read(dir_ / "stderr.txt");
  const std::string trace = Read(dir_ / "run/2d/scenario_trace.csv");
  EXPECT_EQ(trace.substr(0, trace.find('\n')),
            "t,x,y,theta,nu,omega,goal_index");
}

TEST_F(CliTest, SameSeedGivesIdenticalLogs) {
  const std::string base = "train --config " + Out("small.ini") +
                           " --variant 2d --episodes 5 --seed 7 --out-dir ";
  ASSERT_EQ(Run(base + Out("a")), 0) << Read(dir_ / "stderr.txt");
  ASSERT_EQ(Run(base + Out("b")), 0) << Read(dir_ / "stderr.txt");
  const std::string a = Read(dir_ / "a/2d/training_log.csv");
  EXPECT_FALSE(a.empty());
  EXPECT_EQ(a, Read(dir_ / "b/2d/training_log.csv"));
  EXPECT_EQ(Read(dir_ / "a/2d/checkpoint.txt"),
            Read(dir_ / "b/2d/checkpoint.txt"));
}

TEST_F(CliTest, MissingCheckpointIsAnIoError) {
  EXPECT_EQ(Run("eval --variant 4d --out-dir " + Out("nothing")), 3);
  EXPECT_NE(Read(dir_ / "stderr.txt").find("checkpoint"), std::string::npos);
}

TEST_F(CliTest, InvalidConfigurationIsReported) {
  std::ofstream(dir_ / "bad.ini") << "[agent]\ngamma = 2\n";
  EXPECT_EQ(Run("train --config " + Out("bad.ini") + " --out-dir " +
                Out("run")),
            2);
  EXPECT_NE(Read(dir_ / "stderr.txt").find("agent.gamma"), std::string::npos);
}

TEST_F(CliTest, EmptyScenarioIsRejectedBeforeRunning) {
  ASSERT_EQ(Run("train --config " + Out("small.ini") +
                " --variant 2d --episodes 4 --out-dir " + Out("run")),
            0);
  std::ofstream(dir_ / "empty.scn") << "# nothing here\n";
  EXPECT_NE(Run("scenario --config " + Out("small.ini") +
                " --variant 2d --out-dir " + Out("run") + " --scenario " +
                Out("empty.scn")),
            0);
  EXPECT_NE(Read(dir_ / "stderr.txt").find("start"), std::string::npos);
}

TEST_F(CliTest, UnknownSubcommandIsUsageError) {
  EXPECT_EQ(Run("fly"), 1);
  EXPECT_EQ(Run("config"), 0);
  EXPECT_NE(Read(dir_ / "stdout.txt").find("[agent]"), std::string::npos);
}

}  // namespace
