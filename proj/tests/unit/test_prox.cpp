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
#include <random>

#include <gtest/gtest.h>

#include "colpursuit/prox.hpp"
#include "grid_prox.hpp"

namespace colpursuit {
namespace {

TEST(SoftThreshold, Examples) {
  EXPECT_DOUBLE_EQ(soft_threshold(3.0, 1.0), 2.0);
  EXPECT_DOUBLE_EQ(soft_threshold(-0.5, 1.0), 0.0);
  EXPECT_DOUBLE_EQ(soft_threshold(-3.0, 1.0), -2.0);
  EXPECT_DOUBLE_EQ(soft_threshold(1.0, 1.0), 0.0);
  EXPECT_DOUBLE_EQ(soft_threshold(-2.5, 0.0), -2.5);
}

TEST(SoftThreshold, MatrixIsElementwise) {
  Matrix x(2, 2);
  x << 3, -0.5, -3, 0.25;
  Matrix expect(2, 2);
  expect << 2, 0, -2, 0;
  EXPECT_EQ(soft_threshold(x, 1.0), expect);
  soft_threshold_inplace(x, 1.0);
  EXPECT_EQ(x, expect);
}

TEST(ColumnThreshold, Examples) {
  Matrix x(2, 3);
  x << 3, 0.3, 0,
       4, 0.4, 0;
  const Matrix z = column_threshold(x, 1.0);
  EXPECT_NEAR(z(0, 0), 2.4, 1e-15);
  EXPECT_NEAR(z(1, 0), 3.2, 1e-15);
  EXPECT_EQ(z(0, 1), 0.0);
  EXPECT_EQ(z(1, 1), 0.0);
  EXPECT_EQ(z(0, 2), 0.0);
  EXPECT_EQ(z(1, 2), 0.0);
}

TEST(RowThreshold, IsColumnThresholdOfTranspose) {
  std::mt19937_64 gen(3);
  std::normal_distribution<double> n01;
  Matrix x(5, 7);
  for (Index i = 0; i < x.size(); ++i) x.data()[i] = n01(gen);
  Matrix rows = x;
  row_threshold_inplace(rows, 1.3);
  const Matrix cols = column_threshold(x.transpose(), 1.3).transpose();
  EXPECT_LE((rows - cols).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(ProxExactness, ScalarMatchesGridSearch) {
  std::mt19937_64 gen(11);
  std::uniform_real_distribution<double> xs(-5.0, 5.0);
  std::uniform_real_distribution<double> es(0.0, 3.0);
  for (int t = 0; t < 500; ++t) {
    const double x = xs(gen);
    const double eps = es(gen);
    EXPECT_NEAR(soft_threshold(x, eps), testing::grid_scalar_prox(x, eps), 1e-9)
        << "x=" << x << " eps=" << eps;
  }
}

TEST(ProxExactness, VectorMatchesGridSearch) {
  std::mt19937_64 gen(12);
  std::uniform_real_distribution<double> xs(-5.0, 5.0);
  std::uniform_real_distribution<double> es(0.0, 4.0);
  for (int t = 0; t < 200; ++t) {
    const testing::Vec2 v{xs(gen), xs(gen)};
    const double eps = es(gen);
    Matrix col(2, 1);
    col << v[0], v[1];
    const Matrix z = column_threshold(col, eps);
    const testing::Vec2 g = testing::grid_vector_prox(v, eps);
    EXPECT_NEAR(z(0, 0), g[0], 1e-9);
    EXPECT_NEAR(z(1, 0), g[1], 1e-9);
  }
}

TEST(ProxExactness, VectorJustPastThreshold) {
  for (double excess : {1e-1, 1e-3, 1e-6}) {
    for (double angle : {0.3, 2.0, -2.9}) {
      const double eps = 1.7;
      const double n = eps * (1.0 + excess);
      const testing::Vec2 v{n * std::cos(angle), n * std::sin(angle)};
      Matrix col(2, 1);
      col << v[0], v[1];
      const Matrix z = column_threshold(col, eps);
      const testing::Vec2 g = testing::grid_vector_prox(v, eps);
      EXPECT_NEAR(z(0, 0), g[0], 1e-9) << excess;
      EXPECT_NEAR(z(1, 0), g[1], 1e-9) << excess;
      EXPECT_GT(std::hypot(g[0], g[1]), 0.0);
    }
  }
}

}  // namespace
}  // namespace colpursuit
