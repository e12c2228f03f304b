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

#ifndef COLPURSUIT_EVALUATION_HPP_
#define COLPURSUIT_EVALUATION_HPP_

#include <cstdint>
#include <map>
#include <vector>

#include "colpursuit/datagen.hpp"
#include "colpursuit/types.hpp"

namespace colpursuit {

inline constexpr double kDefaultRankTol = 1e-8;

// Number of singular values above rel_tol * sigma_max. rank_of(0) == 0.
Index rank_of(const Matrix& m, double rel_tol = kDefaultRankTol);

// Orthonormal bases for the column space (rows x r) and row space (cols x r),
// truncated at rel_tol * sigma_max.
Matrix column_space_basis(const Matrix& m, double rel_tol = kDefaultRankTol);
Matrix row_space_basis(const Matrix& m, double rel_tol = kDefaultRankTol);

// mu_v = (N2 / r) max_i ||e_i^T V||_2^2 for an orthonormal N2 x r basis V.
// Always lies in [1, N2 / r]. Throws std::invalid_argument when V^T V
// deviates from the identity by more than 1e-10.
double coherence(const Matrix& V);
double row_space_coherence(const Matrix& L, double rel_tol = kDefaultRankTol);

// ||L - U U^T L||_F / ||L||_F with U an orthonormal basis of the selected
// columns of L. Throws on an empty selection.
double recovery_error(const Matrix& L, const IndexList& selected,
                      double rel_tol = kDefaultRankTol);

// Coordinates of L in an orthonormal basis of its column space. Ranks and
// recovery errors of column subsets are preserved, at r x N2 cost instead of
// N1 x N2.
class ColumnSpaceCoordinates {
 public:
  explicit ColumnSpaceCoordinates(const Matrix& L, double rel_tol = kDefaultRankTol);

  Index rank() const { return coords_.rows(); }
  Index rank_of_subset(const IndexList& cols) const;
  double recovery_error_of_subset(const IndexList& cols) const;

 private:
  Matrix coords_;
  double rel_tol_;
};

struct ClusterCoverage {
  std::map<int, Index> per_cluster;  // every inlier cluster present, zero if unsampled
  Index outliers_sampled = 0;
};

// Throws std::invalid_argument when the scene carries no labels.
ClusterCoverage cluster_coverage(const IndexList& selected, const SyntheticScene& scene);

struct EvalReport {
  Index numerical_rank = 0;       // of the selected ground-truth columns
  double coherence_mu_v = 0.0;    // of L's row space
  double recovery_error = 0.0;
  std::map<int, Index> per_cluster_counts;
  Index outliers_sampled = 0;
  Index selected = 0;
};

EvalReport evaluate_selection(const SyntheticScene& scene, const IndexList& selected);

// Fraction of trials in which m1 columns drawn uniformly with replacement span
// the column space of L. Row sampling is the same test on L^T.
double lemma1_trial(const Matrix& L, Index m1, int trials, std::uint64_t seed,
                    int jobs = 1);

struct CurvePoint {
  Index m = 0;
  double mean_rank = 0.0;
  double mean_error = 0.0;
};

// Monte-Carlo rank and recovery error of m columns drawn uniformly without
// replacement, for each m in the grid.
std::vector<CurvePoint> random_sampling_curve(const Matrix& L, const std::vector<Index>& grid,
                                              int trials, std::uint64_t seed, int jobs = 1);

}  // namespace colpursuit

#endif  // COLPURSUIT_EVALUATION_HPP_
