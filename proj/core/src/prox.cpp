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

#include "colpursuit/prox.hpp"

namespace colpursuit {

Matrix soft_threshold(const Matrix& x, double eps) {
  Matrix out = x;
  soft_threshold_inplace(out, eps);
  return out;
}

void soft_threshold_inplace(Matrix& x, double eps) {
  x = x.unaryExpr([eps](double v) { return soft_threshold(v, eps); });
}

Matrix column_threshold(const Matrix& x, double eps) {
  Matrix out = x;
  column_threshold_inplace(out, eps);
  return out;
}

void column_threshold_inplace(Matrix& x, double eps) {
  for (Index j = 0; j < x.cols(); ++j) {
    const double norm = x.col(j).norm();
    if (norm <= eps) {
      x.col(j).setZero();
    } else {
      x.col(j) *= 1.0 - eps / norm;
    }
  }
}

void row_threshold_inplace(Matrix& x, double eps) {
  const Vector norms = x.rowwise().norm();
  for (Index i = 0; i < x.rows(); ++i) {
    if (norms(i) <= eps) {
      x.row(i).setZero();
    } else {
      x.row(i) *= 1.0 - eps / norms(i);
    }
  }
}

}  // namespace colpursuit
