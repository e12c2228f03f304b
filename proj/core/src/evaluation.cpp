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

#include "colpursuit/evaluation.hpp"

#include <cmath>
#include <string>

#include "colpursuit/parallel.hpp"
#include "colpursuit/rng.hpp"

namespace colpursuit {

namespace {

void require_finite(const Matrix& m, const char* what) {
  if (!all_finite(m)) throw std::invalid_argument(std::string(what) + ": non-finite entries");
}

Index count_above(const Vector& sv, double rel_tol) {
  if (sv.size() == 0 || !(sv(0) > 0.0)) return 0;
  const double cut = rel_tol * sv(0);
  Index r = 0;
  while (r < sv.size() && sv(r) > cut) ++r;
  return r;
}

}  // namespace

Index rank_of(const Matrix& m, double rel_tol) {
  require_finite(m, "rank_of");
  if (!(rel_tol > 0.0 && rel_tol < 1.0)) throw std::invalid_argument("rank_of: rel_tol must lie in (0, 1)");
  if (m.size() == 0) return 0;
  Eigen::BDCSVD<Matrix> svd(m);
  return count_above(svd.singularValues(), rel_tol);
}

Matrix column_space_basis(const Matrix& m, double rel_tol) {
  require_finite(m, "column_space_basis");
  if (m.size() == 0) return Matrix(m.rows(), 0);
  Eigen::BDCSVD<Matrix> svd(m, Eigen::ComputeThinU);
  const Index r = count_above(svd.singularValues(), rel_tol);
  return svd.matrixU().leftCols(r);
}

Matrix row_space_basis(const Matrix& m, double rel_tol) {
  require_finite(m, "row_space_basis");
  if (m.size() == 0) return Matrix(m.cols(), 0);
  Eigen::BDCSVD<Matrix> svd(m, Eigen::ComputeThinV);
  const Index r = count_above(svd.singularValues(), rel_tol);
  return svd.matrixV().leftCols(r);
}

double coherence(const Matrix& V) {
  require_finite(V, "coherence");
  const Index r = V.cols();
  if (r == 0 || V.rows() == 0) throw std::invalid_argument("coherence: empty basis");
  const Matrix gram = V.transpose() * V - Matrix::Identity(r, r);
  if (gram.cwiseAbs().maxCoeff() > 1e-10)
    throw std::invalid_argument("coherence: basis columns are not orthonormal");
  const double peak = V.rowwise().squaredNorm().maxCoeff();
  return static_cast<double>(V.rows()) / static_cast<double>(r) * peak;
}

double row_space_coherence(const Matrix& L, double rel_tol) {
  return coherence(row_space_basis(L, rel_tol));
}

double recovery_error(const Matrix& L, const IndexList& selected, double rel_tol) {
  if (selected.empty()) throw std::invalid_argument("recovery_error: empty selection");
  require_finite(L, "recovery_error");
  const double total = L.norm();
  if (total == 0.0) return 0.0;
  const Matrix U = column_space_basis(select_columns(L, selected), rel_tol);
  const Matrix residual = L - U * (U.transpose() * L);
  return residual.norm() / total;
}

ColumnSpaceCoordinates::ColumnSpaceCoordinates(const Matrix& L, double rel_tol)
    : rel_tol_(rel_tol) {
  const Matrix U = column_space_basis(L, rel_tol);
  coords_ = U.transpose() * L;
}

Index ColumnSpaceCoordinates::rank_of_subset(const IndexList& cols) const {
  if (cols.empty()) return 0;
  return rank_of(select_columns(coords_, cols), rel_tol_);
}

double ColumnSpaceCoordinates::recovery_error_of_subset(const IndexList& cols) const {
  const double total = coords_.norm();
  if (total == 0.0) return 0.0;
  if (cols.empty()) return 1.0;
  const Matrix U = column_space_basis(select_columns(coords_, cols), rel_tol_);
  const Matrix residual = coords_ - U * (U.transpose() * coords_);
  return residual.norm() / total;
}

ClusterCoverage cluster_coverage(const IndexList& selected, const SyntheticScene& scene) {
  if (!scene.has_labels())
    throw std::invalid_argument("cluster_coverage: scene carries no cluster labels");
  ClusterCoverage out;
  for (int label : scene.labels)
    if (label >= 0) out.per_cluster.emplace(label, 0);
  for (Index j : selected) {
    if (j < 0 || j >= static_cast<Index>(scene.labels.size()))
      throw std::invalid_argument("cluster_coverage: index out of range");
    const int label = scene.labels[static_cast<std::size_t>(j)];
    if (label < 0) {
      ++out.outliers_sampled;
    } else {
      ++out.per_cluster[label];
    }
  }
  return out;
}

EvalReport evaluate_selection(const SyntheticScene& scene, const IndexList& selected) {
  EvalReport report;
  report.selected = static_cast<Index>(selected.size());
  const Matrix& L = scene.L;
  if (L.norm() > 0.0) report.coherence_mu_v = row_space_coherence(L);
  if (selected.empty()) {
    report.recovery_error = L.norm() > 0.0 ? 1.0 : 0.0;
  } else {
    report.numerical_rank = rank_of(select_columns(L, selected));
    report.recovery_error = recovery_error(L, selected);
  }
  if (scene.has_labels()) {
    const ClusterCoverage cov = cluster_coverage(selected, scene);
    report.per_cluster_counts = cov.per_cluster;
    report.outliers_sampled = cov.outliers_sampled;
  }
  return report;
}

double lemma1_trial(const Matrix& L, Index m1, int trials, std::uint64_t seed, int jobs) {
  if (m1 < 0) throw std::invalid_argument("lemma1_trial: m1 must be nonnegative");
  if (trials < 1) throw std::invalid_argument("lemma1_trial: trials must be positive");
  const ColumnSpaceCoordinates coords(L);
  const Index target = coords.rank();
  std::vector<char> hit(static_cast<std::size_t>(trials), 0);
  parallel_for(trials, jobs, [&](int t) {
    Engine engine(derive_seed(seed, Stream::kTrials, static_cast<std::uint64_t>(t)));
    const IndexList cols = sample_with_replacement(L.cols(), m1, engine);
    hit[static_cast<std::size_t>(t)] = coords.rank_of_subset(cols) == target;
  });
  Index successes = 0;
  for (char h : hit) successes += h;
  return static_cast<double>(successes) / trials;
}

std::vector<CurvePoint> random_sampling_curve(const Matrix& L, const std::vector<Index>& grid,
                                              int trials, std::uint64_t seed, int jobs) {
  if (trials < 1) throw std::invalid_argument("random_sampling_curve: trials must be positive");
  for (Index m : grid)
    if (m < 1 || m > L.cols())
      throw std::invalid_argument("random_sampling_curve: grid point outside [1, N2]");
  const ColumnSpaceCoordinates coords(L);
  const int n_grid = static_cast<int>(grid.size());
  std::vector<double> ranks(static_cast<std::size_t>(n_grid * trials));
  std::vector<double> errors(ranks.size());
  parallel_for(n_grid * trials, jobs, [&](int item) {
    const int g = item / trials;
    Engine engine(derive_seed(seed, Stream::kTrials, static_cast<std::uint64_t>(item)));
    const IndexList cols =
        sample_without_replacement(L.cols(), grid[static_cast<std::size_t>(g)], engine);
    ranks[static_cast<std::size_t>(item)] = static_cast<double>(coords.rank_of_subset(cols));
    errors[static_cast<std::size_t>(item)] = coords.recovery_error_of_subset(cols);
  });
  std::vector<CurvePoint> out;
  out.reserve(grid.size());
  for (int g = 0; g < n_grid; ++g) {
    CurvePoint p;
    p.m = grid[static_cast<std::size_t>(g)];
    for (int t = 0; t < trials; ++t) {
      p.mean_rank += ranks[static_cast<std::size_t>(g * trials + t)];
      p.mean_error += errors[static_cast<std::size_t>(g * trials + t)];
    }
    p.mean_rank /= trials;
    p.mean_error /= trials;
    out.push_back(p);
  }
  return out;
}

}  // namespace colpursuit
