// Copyright 2026 The Quadbench Authors
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

#include "cli.hpp"

#include <gtest/gtest.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "quadbench/config.hpp"

namespace quadbench {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct Result {
  int code = -1;
  std::string out;
  std::string err;
};

Result run(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    dir_ = fs::temp_directory_path() /
           ("quadbench_cli_" + std::string(info->name()) + "_" + std::to_string(::getpid()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  fs::path write_config(const std::string& name, const std::string& text) {
    const fs::path p = dir_ / name;
    std::ofstream(p) << text;
    return p;
  }

  fs::path dir_;
};

TEST_F(Cli, SprintIsReproducible) {
  const fs::path a = dir_ / "a";
  const fs::path b = dir_ / "b";
  const Result ra = run({"sprint", "--trials", "1", "--seed", "7", "--out", a.string()});
  const Result rb = run({"sprint", "--trials", "1", "--seed", "7", "--out", b.string()});
  ASSERT_EQ(ra.code, cli::kOk) << ra.err;
  ASSERT_EQ(rb.code, cli::kOk) << rb.err;
  for (const char* f : {"sprint_summary.csv", "sprint_leaderboard.json", "sprint_trial_0.jsonl"}) {
    ASSERT_TRUE(fs::exists(a / f)) << f;
    EXPECT_EQ(slurp(a / f), slurp(b / f)) << f;
  }
  EXPECT_EQ(slurp(a / "sprint_summary.csv").rfind("# quadbench ", 0), 0u);
  // Command-line overrides are part of the hashed config.
  RunConfig resolved;
  resolved.run.trials = 1;
  resolved.run.seed = 7;
  const json entry = json::parse(slurp(a / "sprint_leaderboard.json"));
  EXPECT_EQ(entry.at("config_hash"), config_hash(resolved));
  EXPECT_NE(ra.out.find("completed 1/1"), std::string::npos) << ra.out;
}

TEST_F(Cli, BadConfigKeyExitsTwo) {
  const fs::path cfg = write_config("bad.json", R"({"gait": {"step_hieght": 0.04}})");
  const Result r = run({"sprint", "-c", cfg.string(), "-o", dir_.string()});
  EXPECT_EQ(r.code, cli::kConfigError);
  EXPECT_NE(r.err.find("gait.step_hieght"), std::string::npos) << r.err;
}

TEST_F(Cli, UnknownFlagExitsTwo) {
  EXPECT_EQ(run({"sprint", "--turbo"}).code, cli::kConfigError);
  EXPECT_EQ(run({"sprint", "--trials", "0"}).code, cli::kConfigError);
  EXPECT_EQ(run({}).code, cli::kConfigError);
}

TEST_F(Cli, HelpAndVersion) {
  const Result h = run({"--help"});
  EXPECT_EQ(h.code, cli::kOk);
  EXPECT_NE(h.out.find("scramble"), std::string::npos);
  const Result v = run({"--version"});
  EXPECT_EQ(v.code, cli::kOk);
  EXPECT_EQ(v.out, std::string(tool_version()) + "\n");
}

TEST_F(Cli, AllDnfExitsOneWithReasons) {
  // A 2 s cap: nothing reaches the 5 m finish line.
  const fs::path cfg = write_config("short.json", R"({"scramble": {"duration": 2.0}})");
  const Result r =
      run({"scramble", "-c", cfg.string(), "-n", "2", "-o", dir_.string()});
  EXPECT_EQ(r.code, cli::kAllDnf) << r.err;
  EXPECT_NE(r.err.find("trial 0: "), std::string::npos) << r.err;
  EXPECT_NE(r.err.find("trial 1: "), std::string::npos) << r.err;
  EXPECT_NE(r.err.find("not reached"), std::string::npos) << r.err;
  const std::string csv = slurp(dir_ / "scramble_summary.csv");
  EXPECT_NE(csv.find(",0,,"), std::string::npos);
}

TEST_F(Cli, FlatScrambleRunsAtSprintPace) {
  const fs::path cfg = write_config("flat.json", R"({
    "scramble": {"obstacles": [], "target_speed": 0.75, "duration": 20.0}})");
  const Result sc = run({"scramble", "-c", cfg.string(), "-n", "1", "-o", (dir_ / "sc").string()});
  const Result sp = run({"sprint", "-c", cfg.string(), "-n", "1", "-o", (dir_ / "sp").string()});
  ASSERT_EQ(sc.code, cli::kOk) << sc.err;
  ASSERT_EQ(sp.code, cli::kOk) << sp.err;
  const json a = json::parse(slurp(dir_ / "sc" / "scramble_leaderboard.json"));
  const json b = json::parse(slurp(dir_ / "sp" / "sprint_leaderboard.json"));
  const double scramble_time = a.at("scores").at(0).get<double>();
  const double sprint_speed = b.at("scores").at(0).get<double>();
  EXPECT_NEAR(scramble_time, 5.0 / sprint_speed, 0.05 * scramble_time);
}

TEST_F(Cli, DynoWritesTwoCsvFiles) {
  const Result r = run({"dyno", "-o", dir_.string()});
  ASSERT_EQ(r.code, cli::kOk) << r.err;
  const std::string surface = slurp(dir_ / "dyno_surface.csv");
  const std::string bode = slurp(dir_ / "dyno_bode.csv");
  const std::string hash_line = "# quadbench " + std::string(tool_version()) +
                                " config_hash=" + config_hash(RunConfig{}) + "\n";
  EXPECT_EQ(surface.rfind(hash_line, 0), 0u);
  EXPECT_EQ(bode.rfind(hash_line, 0), 0u);
  std::istringstream in(surface);
  std::string line;
  std::getline(in, line);
  std::getline(in, line);
  EXPECT_EQ(line, "speed_rad_s,current_a,torque_nm");
  std::size_t rows = 0;
  while (std::getline(in, line)) ++rows;
  EXPECT_EQ(rows, default_dyno_speeds().size() * default_dyno_currents(ActuatorParams{}).size());
}

TEST_F(Cli, TuneBudgetOne) {
  const Result r = run({"tune", "--budget", "1", "--method", "random-search", "--seed", "3", "-o",
                        dir_.string()});
  ASSERT_EQ(r.code, cli::kOk) << r.err;
  const json report = json::parse(slurp(dir_ / "tune_sprint_report.json"));
  EXPECT_EQ(report.at("evaluations").size(), 1u);
  EXPECT_EQ(report.at("config_hash"), config_hash(RunConfig{}));
  // The best-gait file merges back into a config.
  const RunConfig merged = load_config(dir_ / "tune_sprint_best_gait.json");
  EXPECT_EQ(merged.gait.frequency, report.at("best_params").at("frequency").get<double>());
}

TEST_F(Cli, TuneIsReproducible) {
  const std::vector<std::string> base{"tune", "--budget", "16", "--population", "8", "--seed", "2"};
  auto with_out = [&](const fs::path& p) {
    std::vector<std::string> a = base;
    a.push_back("-o");
    a.push_back(p.string());
    return a;
  };
  ASSERT_EQ(run(with_out(dir_ / "a")).code, cli::kOk);
  ASSERT_EQ(run(with_out(dir_ / "b")).code, cli::kOk);
  EXPECT_EQ(slurp(dir_ / "a" / "tune_sprint_report.json"),
            slurp(dir_ / "b" / "tune_sprint_report.json"));
}

TEST_F(Cli, TuneRejectsBadArguments) {
  EXPECT_EQ(run({"tune", "--task", "marathon", "-o", dir_.string()}).code, cli::kConfigError);
  EXPECT_EQ(run({"tune", "--budget", "4", "-o", dir_.string()}).code, cli::kConfigError);
}

TEST_F(Cli, ReplayReproducesScore) {
  ASSERT_EQ(run({"sprint", "-n", "1", "-s", "4", "-o", dir_.string()}).code, cli::kOk);
  const fs::path log = dir_ / "sprint_trial_0.jsonl";
  const Result r = run({"replay", log.string()});
  EXPECT_EQ(r.code, cli::kOk) << r.err;
  EXPECT_NE(r.out.find("(matches stored)"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("mean power"), std::string::npos);
}

TEST_F(Cli, ReplayTruncatedLogNamesLine) {
  ASSERT_EQ(run({"sprint", "-n", "1", "-o", dir_.string()}).code, cli::kOk);
  const std::string text = slurp(dir_ / "sprint_trial_0.jsonl");
  std::size_t pos = 0;
  for (int k = 0; k < 100; ++k) pos = text.find('\n', pos) + 1;
  const fs::path cut = dir_ / "cut.jsonl";
  std::ofstream(cut) << text.substr(0, pos + 30);
  const Result r = run({"replay", cut.string()});
  EXPECT_EQ(r.code, cli::kConfigError);
  EXPECT_NE(r.err.find("line 101"), std::string::npos) << r.err;
}

TEST_F(Cli, ReplayChecksConfigHash) {
  ASSERT_EQ(run({"sprint", "-n", "1", "-o", dir_.string()}).code, cli::kOk);
  const std::string log = (dir_ / "sprint_trial_0.jsonl").string();
  const fs::path same = write_config("same.json", R"({"run": {"trials": 1}})");
  const fs::path other = write_config("other.json", R"({"run": {"trials": 1}, "contact": {"mu": 0.6}})");
  EXPECT_EQ(run({"replay", log, "-c", same.string()}).code, cli::kOk);
  const Result mismatch = run({"replay", log, "-c", other.string()});
  EXPECT_EQ(mismatch.code, cli::kConfigError);
  EXPECT_NE(mismatch.err.find("does not match"), std::string::npos);
  const Result allowed = run({"replay", log, "-c", other.string(), "--allow-hash-mismatch"});
  EXPECT_EQ(allowed.code, cli::kOk);
  EXPECT_NE(allowed.err.find("warning"), std::string::npos);
}

TEST_F(Cli, OutputDirectoryFromEnvironment) {
  const fs::path env_dir = dir_ / "from_env";
  ::setenv(cli::kOutputEnv, env_dir.c_str(), 1);
  const Result r = run({"dyno"});
  ::unsetenv(cli::kOutputEnv);
  ASSERT_EQ(r.code, cli::kOk) << r.err;
  EXPECT_TRUE(fs::exists(env_dir / "dyno_bode.csv"));
  // --out still wins.
  ::setenv(cli::kOutputEnv, env_dir.c_str(), 1);
  const Result r2 = run({"dyno", "-o", (dir_ / "flag").string()});
  ::unsetenv(cli::kOutputEnv);
  ASSERT_EQ(r2.code, cli::kOk);
  EXPECT_TRUE(fs::exists(dir_ / "flag" / "dyno_bode.csv"));
}

}  // namespace
}  // namespace quadbench
