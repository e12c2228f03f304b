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

#ifndef COLPURSUIT_DATAGEN_HPP_
#define COLPURSUIT_DATAGEN_HPP_

#include <cstdint>
#include <optional>
#include <vector>

#include "colpursuit/types.hpp"

namespace colpursuit {

// Union-of-subspaces low-rank model: L = [U_1 Q_1 ... U_n Q_n], with U_i of
// size rows x per_cluster_rank and Q_i of size per_cluster_rank x n_i, both
// i.i.d. standard normal, block i scaled by its amplitude.
struct ClusteredLowRankSpec {
  Index ambient_rows = 0;
  std::vector<Index> cluster_sizes;
  Index per_cluster_rank = 1;
  // Either empty (all 1), a single value shared by every cluster, or one
  // value per cluster.
  std::vector<double> amplitudes;
  std::uint64_t seed = 0;

  Index columns() const;
  Index clusters() const { return static_cast<Index>(cluster_sizes.size()); }
  double amplitude(Index cluster) const;
  void validate() const;  // throws std::invalid_argument
};

struct LowRankBlock {
  Matrix L;
  std::vector<int> labels;  // cluster id per column, 0-based
  Index rank = 0;           // n * per_cluster_rank
};

LowRankBlock gen_clustered_lowrank(const ClusteredLowRankSpec& spec);

// L = U V^T with U (V) the top right singular vectors of `row_structure`
// (`col_structure`), so both the rows and the columns of L follow a union of
// subspaces. The structure blocks need one column per row (column) of L and
// equal ranks. Labels follow the column structure.
LowRankBlock gen_doubly_clustered(const LowRankBlock& row_structure,
                                  const LowRankBlock& col_structure);

// Horizontal concatenation. Labels of block k are shifted past the labels of
// blocks 0..k-1 so clusters stay distinct.
LowRankBlock concat_blocks(const std::vector<LowRankBlock>& blocks);

struct MagnitudeDist {
  enum class Kind { kGaussian, kUniform };
  Kind kind = Kind::kGaussian;
  // Standard deviation for kGaussian, half-width a of U(-a, a) for kUniform.
  double scale = 1.0;

  static MagnitudeDist gaussian(double sigma) { return {Kind::kGaussian, sigma}; }
  static MagnitudeDist uniform(double a) { return {Kind::kUniform, a}; }
};

// Each entry is independently nonzero with probability rho, with the value
// drawn from `dist`. Support and values come from separate substreams.
Matrix gen_sparse(Index rows, Index cols, double rho, const MagnitudeDist& dist,
                  std::uint64_t seed);

// Root-mean-square entry of L; the default corruption sigma.
double rms_entry(const Matrix& L);

struct OutlierPlacement {
  enum class Kind { kTrailing, kIndices };
  Kind kind = Kind::kTrailing;
  IndexList indices;  // used when kind == kIndices

  static OutlierPlacement trailing() { return {}; }
  static OutlierPlacement at(IndexList idx) { return {Kind::kIndices, std::move(idx)}; }
};

struct OutlierBlock {
  Matrix C;
  IndexList indices;  // ascending
};

// Exactly `count` nonzero columns with i.i.d. N(0, 1) entries. For kIndices
// the explicit list must have `count` distinct in-range entries.
OutlierBlock gen_outliers(Index rows, Index cols, Index count,
                          const OutlierPlacement& placement, std::uint64_t seed);

struct SyntheticScene {
  Matrix D, L, S, C;
  std::vector<int> labels;  // -1 marks an outlier column; empty if unlabeled
  Index true_rank = 0;
  double rho = 0.0;
  IndexList outlier_indices;

  Index rows() const { return D.rows(); }
  Index cols() const { return D.cols(); }
  bool has_labels() const { return !labels.empty(); }
};

// D = L + S + C. An absent C is treated as zero. Outlier columns replace the
// low-rank columns at their positions: L is zeroed there and the label is -1.
SyntheticScene compose_scene(const LowRankBlock& low_rank, const Matrix& S,
                             const std::optional<OutlierBlock>& outliers,
                             double rho);

}  // namespace colpursuit

#endif  // COLPURSUIT_DATAGEN_HPP_
