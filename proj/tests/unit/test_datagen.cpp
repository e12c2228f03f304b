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


#include <cmath>
#include <limits>

#include <gtest/gtest.h>

#include "colpursuit/datagen.hpp"
#include "colpursuit/evaluation.hpp"
#include "colpursuit/rng.hpp"

namespace colpursuit {
namespace {

ClusteredLowRankSpec uniform_spec(Index rows, Index clusters, Index size, Index rank,
                                  std::uint64_t seed) {
  ClusteredLowRankSpec s;
  s.ambient_rows = rows;
  s.cluster_sizes.assign(static_cast<std::size_t>(clusters), size);
  s.per_cluster_rank = rank;
  s.seed = seed;
  return s;
}

TEST(Rng, DerivedSeedsDiffer) {
  EXPECT_NE(derive_seed(1, Stream::kLowRank), derive_seed(1, Stream::kSparseSupport));
  EXPECT_NE(derive_seed(1, Stream::kLowRank, 0), derive_seed(1, Stream::kLowRank, 1));
  EXPECT_NE(derive_seed(1, Stream::kLowRank), derive_seed(2, Stream::kLowRank));
  EXPECT_EQ(derive_seed(9, Stream::kTrials, 4), derive_seed(9, Stream::kTrials, 4));
}

TEST(Rng, SamplingWithoutReplacementIsDistinct) {
  Engine e(5);
  IndexList s = sample_without_replacement(50, 50, e);
  std::sort(s.begin(), s.end());
  for (Index i = 0; i < 50; ++i) EXPECT_EQ(s[static_cast<std::size_t>(i)], i);
  EXPECT_THROW(sample_without_replacement(5, 6, e), std::invalid_argument);
}

TEST(GenClusteredLowRank, UnionOfSixtyLines) {
  ClusteredLowRankSpec s;
  s.ambient_rows = 2000;
  s.cluster_sizes.assign(30, 200);
  s.cluster_sizes.insert(s.cluster_sizes.end(), 30, 10);
  s.amplitudes.assign(30, 1.0);
  s.amplitudes.insert(s.amplitudes.end(), 30, std::sqrt(10.0));
  s.per_cluster_rank = 1;
  s.seed = 17;
  const LowRankBlock b = gen_clustered_lowrank(s);
  EXPECT_EQ(b.L.rows(), 2000);
  EXPECT_EQ(b.L.cols(), 6300);
  EXPECT_EQ(b.rank, 60);
  EXPECT_EQ(rank_of(b.L), 60);
  EXPECT_EQ(b.labels.front(), 0);
  EXPECT_EQ(b.labels.back(), 59);
}

TEST(GenClusteredLowRank, SquareSingleClusterIsFullRank) {
  const LowRankBlock b = gen_clustered_lowrank(uniform_spec(12, 1, 12, 12, 3));
  EXPECT_EQ(rank_of(b.L), 12);
}

TEST(GenClusteredLowRank, ConcatenatedMixedRanks) {
  std::vector<LowRankBlock> parts;
  const Index ranks[] = {5, 1, 5, 1};
  for (int j = 0; j < 4; ++j) parts.push_back(gen_clustered_lowrank(uniform_spec(50, 1, 100, ranks[j], 40 + j)));
  const LowRankBlock b = concat_blocks(parts);
  EXPECT_EQ(b.L.cols(), 400);
  EXPECT_EQ(b.rank, 12);
  EXPECT_EQ(rank_of(b.L), 12);
  EXPECT_EQ(b.labels[0], 0);
  EXPECT_EQ(b.labels[150], 1);
  EXPECT_EQ(b.labels[399], 3);
}

TEST(GenClusteredLowRank, RejectsOversizedRank) {
  EXPECT_THROW(gen_clustered_lowrank(uniform_spec(4, 2, 10, 5, 1)), std::invalid_argument);
  EXPECT_THROW(gen_clustered_lowrank(uniform_spec(20, 2, 3, 4, 1)), std::invalid_argument);
}

TEST(GenClusteredLowRank, RankHoldsAcrossSeeds) {
  int hits = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const LowRankBlock b = gen_clustered_lowrank(uniform_spec(40, 6, 8, 2, seed));
    hits += rank_of(b.L, 1e-8) == 12;
  }
  EXPECT_GE(hits, 99);
}

TEST(GenClusteredLowRank, Deterministic) {
  const auto s = uniform_spec(30, 3, 7, 2, 99);
  EXPECT_EQ(gen_clustered_lowrank(s).L, gen_clustered_lowrank(s).L);
  auto t = s;
  t.seed = 100;
  EXPECT_NE(gen_clustered_lowrank(s).L, gen_clustered_lowrank(t).L);
}

TEST(GenClusteredLowRank, AmplitudeScalesBlock) {
  auto s = uniform_spec(10, 2, 4, 1, 8);
  const LowRankBlock a = gen_clustered_lowrank(s);
  s.amplitudes = {1.0, 3.0};
  const LowRankBlock b = gen_clustered_lowrank(s);
  EXPECT_EQ(a.L.leftCols(4), b.L.leftCols(4));
  EXPECT_LE((3.0 * a.L.rightCols(4) - b.L.rightCols(4)).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(GenDoublyClustered, RankAndShape) {
  const LowRankBlock rows = gen_clustered_lowrank(uniform_spec(80, 6, 15, 1, 1));
  const LowRankBlock cols = gen_clustered_lowrank(uniform_spec(60, 6, 12, 1, 2));
  const LowRankBlock b = gen_doubly_clustered(rows, cols);
  EXPECT_EQ(b.L.rows(), 90);
  EXPECT_EQ(b.L.cols(), 72);
  EXPECT_EQ(rank_of(b.L), 6);
  EXPECT_EQ(b.labels, cols.labels);
  const LowRankBlock other = gen_clustered_lowrank(uniform_spec(60, 5, 12, 1, 2));
  EXPECT_THROW(gen_doubly_clustered(rows, other), std::invalid_argument);
}

TEST(GenSparse, ZeroRhoIsZero) {
  EXPECT_EQ(gen_sparse(20, 30, 0.0, MagnitudeDist::gaussian(1.0), 3), Matrix::Zero(20, 30));
}

TEST(GenSparse, NonzeroCountWithinBinomialBound) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Matrix S = gen_sparse(100, 400, 0.02, MagnitudeDist::gaussian(1.0), seed);
    const double nnz = static_cast<double>((S.array() != 0.0).count());
    EXPECT_LE(std::abs(nnz - 800.0), 4.0 * std::sqrt(40000.0 * 0.02 * 0.98)) << seed;
  }
}

TEST(GenSparse, NearlyDense) {
  const Matrix S = gen_sparse(50, 50, 1.0 - 1e-9, MagnitudeDist::uniform(2.0), 4);
  EXPECT_GE((S.array() != 0.0).count(), 2499);
  EXPECT_LE(S.cwiseAbs().maxCoeff(), 2.0);
}

TEST(GenSparse, RejectsBadRho) {
  EXPECT_THROW(gen_sparse(3, 3, 1.0, MagnitudeDist::gaussian(1.0), 0), std::invalid_argument);
  EXPECT_THROW(gen_sparse(3, 3, -0.1, MagnitudeDist::gaussian(1.0), 0), std::invalid_argument);
}

TEST(GenSparse, Deterministic) {
  EXPECT_EQ(gen_sparse(10, 10, 0.3, MagnitudeDist::gaussian(2.0), 8),
            gen_sparse(10, 10, 0.3, MagnitudeDist::gaussian(2.0), 8));
}

TEST(GenOutliers, TrailingColumns) {
  const OutlierBlock o = gen_outliers(50, 350, 50, OutlierPlacement::trailing(), 1);
  ASSERT_EQ(o.indices.size(), 50u);
  EXPECT_EQ(o.indices.front(), 300);
  EXPECT_EQ(o.indices.back(), 349);
  for (Index j = 0; j < 350; ++j) {
    const bool nonzero = o.C.col(j).squaredNorm() > 0.0;
    EXPECT_EQ(nonzero, j >= 300) << j;
  }
}

TEST(GenOutliers, Boundaries) {
  EXPECT_EQ(gen_outliers(5, 8, 0, OutlierPlacement::trailing(), 1).C, Matrix::Zero(5, 8));
  const OutlierBlock all = gen_outliers(5, 8, 8, OutlierPlacement::trailing(), 1);
  for (Index j = 0; j < 8; ++j) EXPECT_GT(all.C.col(j).squaredNorm(), 0.0);
  EXPECT_THROW(gen_outliers(5, 8, 9, OutlierPlacement::trailing(), 1), std::invalid_argument);
}

TEST(GenOutliers, ExplicitIndices) {
  const OutlierBlock o = gen_outliers(4, 10, 2, OutlierPlacement::at({7, 2}), 3);
  EXPECT_EQ(o.indices, IndexList({2, 7}));
  EXPECT_GT(o.C.col(2).squaredNorm(), 0.0);
  EXPECT_EQ(o.C.col(3).squaredNorm(), 0.0);
  EXPECT_THROW(gen_outliers(4, 10, 2, OutlierPlacement::at({3, 3}), 3), std::invalid_argument);
}

TEST(ComposeScene, ArithmeticIdentity) {
  const LowRankBlock L = gen_clustered_lowrank(uniform_spec(50, 2, 175, 3, 6));
  const double sigma = rms_entry(L.L);
  const Matrix S = gen_sparse(50, 350, 0.01, MagnitudeDist::gaussian(sigma), 7);
  const OutlierBlock C = gen_outliers(50, 350, 50, OutlierPlacement::trailing(), 8);
  const SyntheticScene sc = compose_scene(L, S, C, 0.01);
  EXPECT_EQ(sc.D, Matrix(sc.L + sc.S + sc.C));
  EXPECT_LE((sc.D - sc.L - sc.S - sc.C).cwiseAbs().maxCoeff(),
            4 * std::numeric_limits<double>::epsilon() * sc.D.cwiseAbs().maxCoeff());
  EXPECT_EQ(sc.outlier_indices, C.indices);
  EXPECT_EQ(sc.labels[349], -1);
  EXPECT_EQ(sc.labels[0], 0);
  for (Index j = 0; j < 350; ++j) {
    const bool is_outlier = j >= 300;
    EXPECT_EQ(sc.C.col(j).squaredNorm() > 0.0, is_outlier);
  }
  const double frac = static_cast<double>((S.array() != 0.0).count()) / (50.0 * 350.0);
  EXPECT_LE(std::abs(frac - 0.01), 4.0 * std::sqrt(0.01 * 0.99 / (50.0 * 350.0)));
}

TEST(ComposeScene, CleanSceneIsL) {
  const LowRankBlock L = gen_clustered_lowrank(uniform_spec(10, 2, 5, 1, 2));
  const SyntheticScene sc = compose_scene(L, Matrix::Zero(10, 10), std::nullopt, 0.0);
  EXPECT_EQ(sc.D, L.L);
  EXPECT_EQ(sc.C, Matrix::Zero(10, 10));
  EXPECT_EQ(sc.true_rank, 2);
  EXPECT_THROW(compose_scene(L, Matrix::Zero(10, 9), std::nullopt, 0.0), std::invalid_argument);
}

}  // namespace
}  // namespace colpursuit
