// Copyright 2026 The colpursuit Authors
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


#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>
#include <json.hpp>

#include "colpursuit/matrix_io.hpp"
#include "colpursuit_cli/commands.hpp"
#include "colpursuit_cli/config.hpp"
#include "colpursuit_cli/scene.hpp"

namespace colpursuit::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           (std::string("colpursuit_cli_") +
            ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  int run(std::vector<std::string> args) {
    args.insert(args.begin(), "colpursuit");
    std::vector<char*> argv;
    for (auto& a : args) argv.push_back(a.data());
    return run_cli(static_cast<int>(argv.size()), argv.data());
  }

  fs::path write(const std::string& name, const std::string& text) {
    const fs::path p = dir_ / name;
    std::ofstream(p) << text;
    return p;
  }

  static std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }

  static std::map<std::string, std::string> tree(const fs::path& root) {
    std::map<std::string, std::string> out;
    for (const auto& e : fs::recursive_directory_iterator(root))
      if (e.is_regular_file()) out[fs::relative(e.path(), root).string()] = slurp(e.path());
    return out;
  }

  fs::path dir_;
};

constexpr const char* kSmallScene = R"(
experiment = "custom"
seed = 3

[scene]
rows = 20
clusters = [ { count = 2, size = 15, rank = 2 } ]
rho = 0.0

[solver]
gamma_rel = 20.0
mu_scale = 100.0
max_iters = 3000
tol = 1e-5

[sample]
mode = "direct"
)";

TEST(Config, RejectsUnknownKeysAndBadValues) {
  EXPECT_THROW(parse_config("seed = 1\nbogus = 2\n"), ConfigError);
  EXPECT_THROW(parse_config("[scene]\nrows = 10\nwidth = 3\n"), ConfigError);
  EXPECT_THROW(parse_config("[sample]\nmode = \"fastest\"\n"), ConfigError);
  EXPECT_THROW(parse_config("seed = \n"), ConfigError);
  EXPECT_THROW(parse_config("experiment = \"fig99\"\n"), ConfigError);
  ExperimentConfig cfg = parse_config(kSmallScene);
  cfg.sample.alg.tau = 60;
  EXPECT_THROW(validate(cfg), ConfigError);
}

TEST(Config, DumpRoundTrips) {
  for (const std::string& id : preset_ids()) {
    if (id == "custom") {
      EXPECT_THROW(preset_config(id), ConfigError);
      continue;
    }
    const ExperimentConfig cfg = preset_config(id);
    EXPECT_NO_THROW(validate(cfg)) << id;
    const std::string text = dump_config(cfg);
    EXPECT_EQ(dump_config(parse_config(text)), text) << id;
  }
  EXPECT_EQ(preset_ids().size(), 8u);
}

TEST(Config, ModeNames) {
  for (SampleMode m : {SampleMode::kDirect, SampleMode::kSketched, SampleMode::kAlg1,
                       SampleMode::kAlg2, SampleMode::kOutlierRobust})
    EXPECT_EQ(parse_mode(mode_name(m)), m);
  EXPECT_THROW(parse_mode("alg3"), std::invalid_argument);
}

TEST_F(CliTest, GenWritesPresetScene) {
  ASSERT_EQ(run({"gen", "--preset", "fig2", "--out", (dir_ / "g").string()}), kExitOk);
  const Matrix D = load_matrix(dir_ / "g" / "D.csv", MatrixFormat::kCsv);
  EXPECT_EQ(D.rows(), 100);
  EXPECT_EQ(D.cols(), 400);
  const json meta = json::parse(slurp(dir_ / "g" / "scene.json"));
  EXPECT_EQ(meta.at("true_rank"), 12);
  const SyntheticScene sc = load_scene(dir_ / "g");
  EXPECT_EQ(sc.D, Matrix(sc.L + sc.S + sc.C));
}

TEST_F(CliTest, ZeroRhoWritesZeroS) {
  const fs::path cfg = write("s.toml", kSmallScene);
  ASSERT_EQ(run({"gen", "--config", cfg.string(), "--out", (dir_ / "g").string()}), kExitOk);
  EXPECT_EQ(slurp(dir_ / "g" / "S.csv"), to_csv(Matrix::Zero(20, 30)));
}

TEST_F(CliTest, BadOutputPathLeavesNothing) {
  const fs::path blocker = write("blocker", "x");
  const fs::path out = blocker / "sub";
  EXPECT_NE(run({"preset", "fig4", "--out", out.string()}), kExitOk);
  EXPECT_FALSE(fs::exists(out));
  EXPECT_EQ(slurp(blocker), "x");

  OutputSet set;
  set.add("a.txt", "1");
  set.add("nested/b.txt", "2");
  fs::create_directories(dir_ / "ro");
  std::ofstream(dir_ / "ro" / "nested") << "file in the way";
  EXPECT_THROW(set.commit(dir_ / "ro"), std::runtime_error);
  EXPECT_FALSE(fs::exists(dir_ / "ro" / "a.txt"));
  EXPECT_EQ(std::distance(fs::directory_iterator(dir_ / "ro"), fs::directory_iterator{}), 1);
}

TEST_F(CliTest, RerunsAreByteIdentical) {
  ASSERT_EQ(run({"preset", "fig4", "--out", (dir_ / "a").string()}), kExitOk);
  ASSERT_EQ(run({"preset", "fig4", "--out", (dir_ / "b").string()}), kExitOk);
  const auto a = tree(dir_ / "a");
  EXPECT_GT(a.size(), 5u);
  EXPECT_EQ(a, tree(dir_ / "b"));
  ASSERT_EQ(run({"preset", "fig4", "--seed", "2", "--out", (dir_ / "c").string()}), kExitOk);
  EXPECT_NE(a.at("scene/D.csv"), tree(dir_ / "c").at("scene/D.csv"));
}

TEST_F(CliTest, SampleThenEvaluate) {
  const fs::path cfg = write("s.toml", kSmallScene);
  ASSERT_EQ(run({"gen", "--config", cfg.string(), "--out", (dir_ / "g").string()}), kExitOk);
  ASSERT_EQ(run({"sample", "--config", cfg.string(), "--scene", (dir_ / "g").string(), "--out",
                 (dir_ / "s").string()}),
            kExitOk);
  ASSERT_EQ(run({"eval", "--selection", (dir_ / "s" / "selection.json").string(), "--scene",
                 (dir_ / "g").string(), "--cluster-metrics", "--out", (dir_ / "e").string()}),
            kExitOk);
  const json rep = json::parse(slurp(dir_ / "e" / "report.json"));
  EXPECT_EQ(rep.at("numerical_rank"), 4);
  EXPECT_LE(rep.at("recovery_error").get<double>(), 1e-8);
  EXPECT_GE(rep.at("per_cluster_counts").at("0").get<int>(), 2);
  EXPECT_GE(rep.at("per_cluster_counts").at("1").get<int>(), 2);
}

TEST_F(CliTest, FullSelectionHasZeroError) {
  const fs::path cfg = write("s.toml", kSmallScene);
  ASSERT_EQ(run({"gen", "--config", cfg.string(), "--out", (dir_ / "g").string()}), kExitOk);
  json all = json::array();
  for (int j = 0; j < 30; ++j) all.push_back(j);
  const fs::path sel = write("sel.json", json{{"selected", all}}.dump());
  ASSERT_EQ(run({"eval", "--selection", sel.string(), "--scene", (dir_ / "g").string(),
                 "--out", (dir_ / "e").string()}),
            kExitOk);
  const json rep = json::parse(slurp(dir_ / "e" / "report.json"));
  EXPECT_LE(rep.at("recovery_error").get<double>(), 1e-10);
  EXPECT_EQ(rep.at("per_cluster_counts").at("0"), 15);
}

TEST_F(CliTest, ClusterMetricsNeedLabels) {
  save_matrix(dir_ / "D.csv", Matrix::Identity(4, 6), MatrixFormat::kCsv);
  const fs::path sel = write("sel.json", R"({"selected": [0, 1]})");
  EXPECT_EQ(run({"eval", "--selection", sel.string(), "--scene", (dir_ / "D.csv").string(),
                 "--cluster-metrics", "--out", (dir_ / "e").string()}),
            kExitConfig);
  EXPECT_FALSE(fs::exists(dir_ / "e"));
}

TEST_F(CliTest, SampleOnBareMatrixFile) {
  save_matrix(dir_ / "D.csv", Matrix::Identity(4, 6), MatrixFormat::kCsv);
  const fs::path cfg = write("s.toml", kSmallScene);
  ASSERT_EQ(run({"sample", "--config", cfg.string(), "--scene", (dir_ / "D.csv").string(),
                 "--out", (dir_ / "s").string()}),
            kExitOk);
  const json sel = json::parse(slurp(dir_ / "s" / "selection.json"));
  EXPECT_EQ(sel.at("shape"), json::array({4, 6}));
}

TEST_F(CliTest, UsageErrorsExitOne) {
  EXPECT_EQ(run({"preset", "fig99", "--out", (dir_ / "x").string()}), kExitConfig);
  EXPECT_EQ(run({"preset", "custom", "--out", (dir_ / "x").string()}), kExitConfig);
  EXPECT_EQ(run({"gen", "--preset", "fig2"}), kExitConfig);
  const fs::path bad = write("bad.toml", "[scene]\nrows = -4\n");
  EXPECT_EQ(run({"gen", "--config", bad.string(), "--out", (dir_ / "x").string()}), kExitConfig);
  EXPECT_FALSE(fs::exists(dir_ / "x"));
}

TEST(Commands, NonConvergenceGivesExitTwo) {
  ExperimentConfig cfg = parse_config(kSmallScene);
  cfg.solver().max_iters = 3;
  const Outcome out = run_experiment(cfg);
  EXPECT_FALSE(out.converged);
  EXPECT_EQ(out.exit_code(), kExitNotConverged);
  EXPECT_TRUE(out.files.contains("selection.json"));
  EXPECT_EQ(json::parse(out.files.at("selection.json")).at("converged"), false);
}

TEST(Commands, RandomSamplingErrorCurveIsNonIncreasing) {
  const ExperimentConfig cfg = preset_config("fig6");
  const SyntheticScene scene = build_scene(cfg.scene, cfg.seed);
  SelectionRecord sel;
  sel.selected = {0, 1, 2};
  const Outcome out = run_eval(sel, scene, cfg.eval, cfg.seed, true, 2);
  ASSERT_TRUE(out.files.contains("curve.csv"));
  std::istringstream in(out.files.at("curve.csv"));
  std::string line;
  std::getline(in, line);
  double prev_err = 2.0;
  int rows = 0;
  while (std::getline(in, line)) {
    double m = 0, rank = 0, err = 0;
    char c1 = 0, c2 = 0;
    std::istringstream ls(line);
    ls >> m >> c1 >> rank >> c2 >> err;
    EXPECT_LE(err, prev_err) << "m=" << m;
    prev_err = err;
    ++rows;
  }
  EXPECT_EQ(rows, static_cast<int>(cfg.eval.curve_grid.size()));
}

}  // namespace
}  // namespace colpursuit::cli
