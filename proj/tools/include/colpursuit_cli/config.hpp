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


#ifndef COLPURSUIT_CLI_CONFIG_HPP_
#define COLPURSUIT_CLI_CONFIG_HPP_

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "colpursuit/datagen.hpp"
#include "colpursuit/matrix_io.hpp"
#include "colpursuit/sampling.hpp"
#include "colpursuit/solvers.hpp"

namespace colpursuit::cli {

// Bad flags, unreadable or invalid config files. Maps to exit code 1.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class SampleMode { kDirect, kSketched, kAlg1, kAlg2, kOutlierRobust };

SampleMode parse_mode(std::string_view name);
const char* mode_name(SampleMode mode);

// `count` clusters sharing size, rank and amplitude.
struct ClusterGroup {
  Index count = 1;
  Index size = 0;
  Index rank = 1;
  double amplitude = 1.0;
};

struct SceneConfig {
  // Matrix file or scene directory. Generation settings are ignored when set.
  std::string input;

  Index rows = 0;
  std::vector<ClusterGroup> clusters;
  // When non-empty the rows are clustered too and L = U V^T.
  std::vector<ClusterGroup> row_clusters;

  double rho = 0.0;
  MagnitudeDist::Kind sparse_kind = MagnitudeDist::Kind::kGaussian;
  double sparse_scale = 0.0;  // 0 selects the RMS entry of L

  Index outliers = 0;
  IndexList outlier_indices;     // explicit positions; trailing when empty
  bool append_outliers = false;  // outlier columns added after the clusters

  MatrixFormat format = MatrixFormat::kCsv;

  bool generated() const { return input.empty(); }
};

struct SampleConfig {
  SampleMode mode = SampleMode::kDirect;
  Alg1Config alg;  // its solver field configures every mode
  int j_max = 3;
  bool write_residual = false;
};

struct EvalConfig {
  std::vector<Index> curve_grid;
  int curve_trials = 0;
};

struct ExperimentConfig {
  std::string experiment = "custom";
  std::uint64_t seed = 0;
  SceneConfig scene;
  SampleConfig sample;
  EvalConfig eval;
  std::vector<Index> sweep_outliers;  // fig7-sweep only

  const SolverConfig& solver() const { return sample.alg.solver; }
  SolverConfig& solver() { return sample.alg.solver; }
};

// Relative `scene.input` paths resolve against `base_dir`.
ExperimentConfig parse_config(std::string_view toml_text,
                              const std::filesystem::path& base_dir = {});
ExperimentConfig load_config(const std::filesystem::path& path);

// TOML text that parses back to the same configuration.
std::string dump_config(const ExperimentConfig& cfg);

// Structural checks beyond what parsing enforces.
void validate(const ExperimentConfig& cfg);

}  // namespace colpursuit::cli

#endif  // COLPURSUIT_CLI_CONFIG_HPP_
