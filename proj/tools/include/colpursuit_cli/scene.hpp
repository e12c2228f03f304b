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


#ifndef COLPURSUIT_CLI_SCENE_HPP_
#define COLPURSUIT_CLI_SCENE_HPP_

#include <cstdint>
#include <filesystem>
#include <string>

#include "colpursuit/datagen.hpp"
#include "colpursuit_cli/config.hpp"
#include "colpursuit_cli/output.hpp"

namespace colpursuit::cli {

// Generates the configured scene. Cluster group g draws from its own
// substream of `seed`.
SyntheticScene build_scene(const SceneConfig& cfg, std::uint64_t seed);

// Adds D, L, S, C, labels.csv and scene.json under `prefix`.
void add_scene_files(OutputSet& out, const SyntheticScene& scene, MatrixFormat format,
                     const std::string& prefix = "");

// A scene directory written by add_scene_files, or a bare matrix file read
// as D with no ground truth and no labels.
SyntheticScene load_scene(const std::filesystem::path& path);

// The scene a command operates on: loaded when cfg.input is set, else built.
SyntheticScene resolve_scene(const SceneConfig& cfg, std::uint64_t seed);

inline bool has_ground_truth(const SyntheticScene& s) { return s.L.size() > 0; }

}  // namespace colpursuit::cli

#endif  // COLPURSUIT_CLI_SCENE_HPP_
