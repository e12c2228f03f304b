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

#ifndef COLPURSUIT_PROX_HPP_
#define COLPURSUIT_PROX_HPP_

#include "colpursuit/types.hpp"

namespace colpursuit {

// sgn(x) max(|x| - eps, 0): the minimizer of eps|z| + (z - x)^2 / 2.
inline double soft_threshold(double x, double eps) {
  const double mag = (x < 0 ? -x : x) - eps;
  if (mag <= 0.0) return 0.0;
  return x < 0 ? -mag : mag;
}

Matrix soft_threshold(const Matrix& x, double eps);
void soft_threshold_inplace(Matrix& x, double eps);

// Group shrinkage per column: zero if ||x_i|| <= eps, else x_i (1 - eps/||x_i||).
// The minimizer of eps ||z||_2 + ||z - x_i||^2 / 2 column by column.
Matrix column_threshold(const Matrix& x, double eps);
void column_threshold_inplace(Matrix& x, double eps);

// The same shrinkage applied to rows, i.e. column_threshold of the transpose.
void row_threshold_inplace(Matrix& x, double eps);

}  // namespace colpursuit

#endif  // COLPURSUIT_PROX_HPP_
