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

#ifndef COLPURSUIT_TYPES_HPP_
#define COLPURSUIT_TYPES_HPP_

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace colpursuit {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

// Sorted, duplicate-free column or row indices.
using IndexList = std::vector<Index>;

// Raised for malformed input files (parse failures, ragged rows, non-finite
// values).
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised when a numerical routine cannot proceed on its input.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

bool all_finite(const Matrix& m);

// Gathers the listed columns (rows) of `m` in list order.
Matrix select_columns(const Matrix& m, const IndexList& cols);
Matrix select_rows(const Matrix& m, const IndexList& rows);

}  // namespace colpursuit

#endif  // COLPURSUIT_TYPES_HPP_
