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

#include "colpursuit/datagen.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

#include <Eigen/SVD>

#include "colpursuit/rng.hpp"

namespace colpursuit {

Index ClusteredLowRankSpec::columns() const {
  Index n = 0;
  for (Index s : cluster_sizes) n += s;
  return n;
}

double ClusteredLowRankSpec::amplitude(Index cluster) const {
  if (amplitudes.empty()) return 1.0;
  if (amplitudes.size() == 1) return amplitudes.front();
  return amplitudes[static_cast<std::size_t>(cluster)];
}

void ClusteredLowRankSpec::validate() const {
  if (ambient_rows < 1) throw std::invalid_argument("ambient_rows must be positive");
  if (cluster_sizes.empty()) throw std::invalid_argument("at least one cluster required");
  if (per_cluster_rank < 1) throw std::invalid_argument("per_cluster_rank must be positive");
  Index min_size = cluster_sizes.front();
  for (Index s : cluster_sizes) {
    if (s < 1) throw std::invalid_argument("cluster sizes must be positive");
    min_size = std::min(min_size, s);
  }
  if (per_cluster_rank > std::min(ambient_rows, min_size))
    throw std::invalid_argument("per_cluster_rank " + std::to_string(per_cluster_rank) +
                                " exceeds min(rows, smallest cluster) = " +
                                std::to_string(std::min(ambient_rows, min_size)));
  if (amplitudes.size() > 1 && amplitudes.size() != cluster_sizes.size())
    throw std::invalid_argument("amplitudes must have 0, 1, or one entry per cluster");
  for (double a : amplitudes)
    if (!(a >= 0.0) || !std::isfinite(a))
      throw std::invalid_argument("amplitudes must be finite and nonnegative");
}

LowRankBlock gen_clustered_lowrank(const ClusteredLowRankSpec& spec) {
  spec.validate();
  Engine engine(derive_seed(spec.seed, Stream::kLowRank));
  LowRankBlock out;
  out.L.resize(spec.ambient_rows, spec.columns());
  out.labels.reserve(static_cast<std::size_t>(spec.columns()));
  out.rank = spec.clusters() * spec.per_cluster_rank;

  Index offset = 0;
  for (Index c = 0; c < spec.clusters(); ++c) {
    const Index size = spec.cluster_sizes[static_cast<std::size_t>(c)];
    const Matrix U = standard_normal(spec.ambient_rows, spec.per_cluster_rank, engine);
    const Matrix Q = standard_normal(spec.per_cluster_rank, size, engine);
    out.L.middleCols(offset, size).noalias() = spec.amplitude(c) * (U * Q);
    out.labels.insert(out.labels.end(), static_cast<std::size_t>(size), static_cast<int>(c));
    offset += size;
  }
  return out;
}

LowRankBlock gen_doubly_clustered(const LowRankBlock& row_structure,
                                  const LowRankBlock& col_structure) {
  if (row_structure.rank != col_structure.rank)
    throw std::invalid_argument("gen_doubly_clustered: row and column ranks differ");
  const Index r = row_structure.rank;
  if (r < 1 || r > row_structure.L.rows() || r > col_structure.L.rows() ||
      r > row_structure.L.cols() || r > col_structure.L.cols())
    throw std::invalid_argument("gen_doubly_clustered: rank exceeds a structure dimension");
  const Eigen::BDCSVD<Matrix> su(row_structure.L, Eigen::ComputeThinV);
  const Eigen::BDCSVD<Matrix> sv(col_structure.L, Eigen::ComputeThinV);
  LowRankBlock out;
  out.L.noalias() = su.matrixV().leftCols(r) * sv.matrixV().leftCols(r).transpose();
  out.labels = col_structure.labels;
  out.rank = r;
  return out;
}

LowRankBlock concat_blocks(const std::vector<LowRankBlock>& blocks) {
  if (blocks.empty()) throw std::invalid_argument("concat_blocks: no blocks");
  const Index rows = blocks.front().L.rows();
  Index cols = 0;
  for (const auto& b : blocks) {
    if (b.L.rows() != rows) throw std::invalid_argument("concat_blocks: row mismatch");
    cols += b.L.cols();
  }
  LowRankBlock out;
  out.L.resize(rows, cols);
  Index offset = 0;
  int label_base = 0;
  for (const auto& b : blocks) {
    out.L.middleCols(offset, b.L.cols()) = b.L;
    int max_label = -1;
    for (int l : b.labels) {
      out.labels.push_back(l + label_base);
      max_label = std::max(max_label, l);
    }
    label_base += max_label + 1;
    out.rank += b.rank;
    offset += b.L.cols();
  }
  return out;
}

Matrix gen_sparse(Index rows, Index cols, double rho, const MagnitudeDist& dist,
                  std::uint64_t seed) {
  if (!(rho >= 0.0 && rho < 1.0)) throw std::invalid_argument("rho must lie in [0, 1)");
  if (rows < 0 || cols < 0) throw std::invalid_argument("negative shape");
  if (!(dist.scale >= 0.0) || !std::isfinite(dist.scale))
    throw std::invalid_argument("magnitude scale must be finite and nonnegative");
  Matrix S = Matrix::Zero(rows, cols);
  if (rho == 0.0) return S;

  Engine support(derive_seed(seed, Stream::kSparseSupport));
  Engine values(derive_seed(seed, Stream::kSparseValues));
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  std::normal_distribution<double> normal(0.0, dist.scale);
  std::uniform_real_distribution<double> uniform(-dist.scale, dist.scale);
  for (Index j = 0; j < cols; ++j) {
    for (Index i = 0; i < rows; ++i) {
      if (coin(support) >= rho) continue;
      S(i, j) = dist.kind == MagnitudeDist::Kind::kGaussian ? normal(values) : uniform(values);
    }
  }
  return S;
}

double rms_entry(const Matrix& L) {
  if (L.size() == 0) return 0.0;
  return L.norm() / std::sqrt(static_cast<double>(L.size()));
}

OutlierBlock gen_outliers(Index rows, Index cols, Index count,
                          const OutlierPlacement& placement, std::uint64_t seed) {
  if (count < 0 || count > cols)
    throw std::invalid_argument("outlier count must lie in [0, cols]");
  OutlierBlock out;
  out.C = Matrix::Zero(rows, cols);
  if (placement.kind == OutlierPlacement::Kind::kTrailing) {
    for (Index j = cols - count; j < cols; ++j) out.indices.push_back(j);
  } else {
    std::set<Index> seen;
    for (Index j : placement.indices) {
      if (j < 0 || j >= cols) throw std::invalid_argument("outlier index out of range");
      if (!seen.insert(j).second) throw std::invalid_argument("duplicate outlier index");
    }
    if (static_cast<Index>(seen.size()) != count)
      throw std::invalid_argument("explicit outlier list length differs from count");
    out.indices.assign(seen.begin(), seen.end());
  }
  Engine engine(derive_seed(seed, Stream::kOutliers));
  std::normal_distribution<double> normal(0.0, 1.0);
  for (Index j : out.indices)
    for (Index i = 0; i < rows; ++i) out.C(i, j) = normal(engine);
  return out;
}

SyntheticScene compose_scene(const LowRankBlock& low_rank, const Matrix& S,
                             const std::optional<OutlierBlock>& outliers,
                             double rho) {
  const Matrix& L = low_rank.L;
  if (S.rows() != L.rows() || S.cols() != L.cols())
    throw std::invalid_argument("compose_scene: S shape differs from L");
  if (outliers && (outliers->C.rows() != L.rows() || outliers->C.cols() != L.cols()))
    throw std::invalid_argument("compose_scene: C shape differs from L");
  if (!low_rank.labels.empty() && static_cast<Index>(low_rank.labels.size()) != L.cols())
    throw std::invalid_argument("compose_scene: label count differs from column count");

  SyntheticScene scene;
  scene.L = L;
  scene.S = S;
  scene.C = outliers ? outliers->C : Matrix::Zero(L.rows(), L.cols());
  scene.labels = low_rank.labels;
  scene.true_rank = low_rank.rank;
  scene.rho = rho;
  if (outliers) {
    scene.outlier_indices = outliers->indices;
    for (Index j : scene.outlier_indices) scene.L.col(j).setZero();
    if (!scene.labels.empty())
      for (Index j : scene.outlier_indices) scene.labels[static_cast<std::size_t>(j)] = -1;
  }
  scene.D = scene.L + scene.S + scene.C;
  return scene;
}

}  // namespace colpursuit
