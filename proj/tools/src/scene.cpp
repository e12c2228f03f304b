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


#include "colpursuit_cli/scene.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "colpursuit/matrix_io.hpp"
#include "colpursuit/rng.hpp"

namespace colpursuit::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

LowRankBlock build_groups(const std::vector<ClusterGroup>& groups, Index rows,
                          std::uint64_t seed, std::uint64_t counter_base) {
  std::vector<LowRankBlock> blocks;
  for (std::size_t g = 0; g < groups.size(); ++g) {
    ClusteredLowRankSpec spec;
    spec.ambient_rows = rows;
    spec.cluster_sizes.assign(static_cast<std::size_t>(groups[g].count), groups[g].size);
    spec.per_cluster_rank = groups[g].rank;
    spec.amplitudes = {groups[g].amplitude};
    spec.seed = derive_seed(seed, Stream::kLowRank, counter_base + g);
    blocks.push_back(gen_clustered_lowrank(spec));
  }
  return concat_blocks(blocks);
}

std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string labels_csv(const std::vector<int>& labels) {
  std::string out;
  for (int l : labels) out += std::to_string(l) + "\n";
  return out;
}

}  // namespace

SyntheticScene build_scene(const SceneConfig& cfg, std::uint64_t seed) {
  LowRankBlock low_rank;
  try {
    low_rank = build_groups(cfg.clusters, cfg.rows, seed, 0);
    if (!cfg.row_clusters.empty()) {
      const LowRankBlock row_structure = build_groups(cfg.row_clusters, cfg.rows, seed, 1000);
      low_rank = gen_doubly_clustered(row_structure, low_rank);
    }
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("scene: ") + e.what());
  }

  const double scale = cfg.sparse_scale > 0.0 ? cfg.sparse_scale : rms_entry(low_rank.L);
  const MagnitudeDist dist{cfg.sparse_kind, scale};

  if (cfg.append_outliers && cfg.outliers > 0) {
    const Index inliers = low_rank.L.cols();
    low_rank.L.conservativeResize(Eigen::NoChange, inliers + cfg.outliers);
    low_rank.L.rightCols(cfg.outliers).setZero();
    low_rank.labels.resize(static_cast<std::size_t>(inliers + cfg.outliers), -1);
  }
  const Index rows = low_rank.L.rows();
  const Index cols = low_rank.L.cols();

  std::optional<OutlierBlock> outliers;
  if (cfg.outliers > 0) {
    const OutlierPlacement placement = cfg.outlier_indices.empty()
                                           ? OutlierPlacement::trailing()
                                           : OutlierPlacement::at(cfg.outlier_indices);
    try {
      outliers = gen_outliers(rows, cols, cfg.outliers, placement, seed);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(std::string("scene: ") + e.what());
    }
  }
  const Matrix S = gen_sparse(rows, cols, cfg.rho, dist, seed);
  return compose_scene(low_rank, S, outliers, cfg.rho);
}

void add_scene_files(OutputSet& out, const SyntheticScene& scene, MatrixFormat format,
                     const std::string& prefix) {
  const std::string ext = extension_for(format);
  out.add(prefix + "D" + ext, serialize_matrix(scene.D, format));
  if (has_ground_truth(scene)) {
    out.add(prefix + "L" + ext, serialize_matrix(scene.L, format));
    out.add(prefix + "S" + ext, serialize_matrix(scene.S, format));
    out.add(prefix + "C" + ext, serialize_matrix(scene.C, format));
  }
  if (scene.has_labels()) out.add(prefix + "labels.csv", labels_csv(scene.labels));
  json meta = {
      {"rows", scene.rows()},
      {"cols", scene.cols()},
      {"format", format == MatrixFormat::kCsv ? "csv" : "bin"},
      {"ground_truth", has_ground_truth(scene)},
      {"labels", scene.has_labels()},
      {"true_rank", scene.true_rank},
      {"rho", scene.rho},
      {"outlier_indices", scene.outlier_indices},
  };
  out.add(prefix + "scene.json", meta.dump(2) + "\n");
}

SyntheticScene load_scene(const fs::path& path) {
  std::error_code ec;
  if (!fs::exists(path, ec)) throw ConfigError("scene path " + path.string() + " does not exist");
  SyntheticScene scene;
  try {
    if (!fs::is_directory(path, ec)) {
      scene.D = load_matrix(path, format_for_path(path));
      return scene;
    }
    json meta;
    try {
      meta = json::parse(read_text(path / "scene.json"));
    } catch (const json::exception& e) {
      throw ConfigError(path.string() + "/scene.json: " + e.what());
    }
    const MatrixFormat format = parse_format(meta.value("format", std::string("csv")));
    const std::string ext = extension_for(format);
    scene.D = load_matrix(path / ("D" + ext), format);
    if (meta.value("ground_truth", false)) {
      scene.L = load_matrix(path / ("L" + ext), format);
      scene.S = load_matrix(path / ("S" + ext), format);
      scene.C = load_matrix(path / ("C" + ext), format);
      for (const Matrix* m : {&scene.L, &scene.S, &scene.C})
        if (m->rows() != scene.D.rows() || m->cols() != scene.D.cols())
          throw ConfigError(path.string() + ": ground-truth shapes differ from D");
    }
    if (meta.value("labels", false)) {
      const Matrix labels = parse_csv(read_text(path / "labels.csv"));
      if (labels.cols() != 1 || labels.rows() != scene.D.cols())
        throw ConfigError(path.string() + "/labels.csv: expected one label per column");
      for (Index j = 0; j < labels.rows(); ++j) scene.labels.push_back(static_cast<int>(labels(j, 0)));
    }
    scene.true_rank = meta.value("true_rank", Index{0});
    scene.rho = meta.value("rho", 0.0);
    scene.outlier_indices = meta.value("outlier_indices", IndexList{});
  } catch (const ParseError& e) {
    throw ConfigError(e.what());
  } catch (const json::exception& e) {
    throw ConfigError(path.string() + ": " + e.what());
  } catch (const std::invalid_argument& e) {
    throw ConfigError(path.string() + ": " + e.what());
  } catch (const std::runtime_error& e) {
    if (dynamic_cast<const ConfigError*>(&e)) throw;
    throw ConfigError(e.what());
  }
  return scene;
}

SyntheticScene resolve_scene(const SceneConfig& cfg, std::uint64_t seed) {
  return cfg.generated() ? build_scene(cfg, seed) : load_scene(cfg.input);
}

}  // namespace colpursuit::cli
