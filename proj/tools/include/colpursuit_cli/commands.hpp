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


#ifndef COLPURSUIT_CLI_COMMANDS_HPP_
#define COLPURSUIT_CLI_COMMANDS_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "colpursuit/datagen.hpp"
#include "colpursuit_cli/config.hpp"
#include "colpursuit_cli/output.hpp"

namespace colpursuit::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 1;
inline constexpr int kExitNotConverged = 2;

struct Outcome {
  OutputSet files;
  bool converged = true;

  int exit_code() const { return converged ? kExitOk : kExitNotConverged; }
};

// Column indices read back from a selection file.
struct SelectionRecord {
  IndexList selected;
  std::optional<IndexList> informative;
};

SelectionRecord parse_selection(std::string_view json_text);

const std::vector<std::string>& preset_ids();
// Built-in configuration of a preset. Throws ConfigError for unknown ids and
// for "custom", which has no built-in configuration.
ExperimentConfig preset_config(std::string_view id);

// Scene files only.
Outcome run_gen(const ExperimentConfig& cfg);

// selection.json plus mode-specific traces for the given scene.
Outcome run_sample(const ExperimentConfig& cfg, const SyntheticScene& scene, int jobs = 1);

// report.json, and curve.csv when eval.curve_grid is set. Cluster counts are
// reported whenever the scene has labels; with `require_clusters` a scene
// without labels is a ConfigError.
Outcome run_eval(const SelectionRecord& selection, const SyntheticScene& scene,
                 const EvalConfig& eval, std::uint64_t seed, bool require_clusters,
                 int jobs = 1);

// Full pipeline for cfg.experiment: config.toml, scene/, selection.json,
// report.json and the experiment's curves. fig7-sweep writes sweep.csv and
// one selection per outlier count instead.
Outcome run_experiment(const ExperimentConfig& cfg, int jobs = 1);

// Command-line entry point; returns the process exit code.
int run_cli(int argc, char** argv);

}  // namespace colpursuit::cli

#endif  // COLPURSUIT_CLI_COMMANDS_HPP_
