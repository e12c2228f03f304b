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

#ifndef COLPURSUIT_SAMPLING_HPP_
#define COLPURSUIT_SAMPLING_HPP_

#include <cstdint>
#include <optional>
#include <vector>

#include "colpursuit/solvers.hpp"
#include "colpursuit/types.hpp"

namespace colpursuit {

// Row budget from the row-sampling bound:
//   ceil(10 c r phi ln(2r / delta)),  phi = max(r, ln N1) / r.
// Throws std::invalid_argument unless r >= 1, c > 0 and delta in (0, 1).
Index suggested_row_count(Index r, Index N1, double c, double delta);

// Per column, zeroes the ceil(tau * rows / 100) entries of largest magnitude;
// among equal magnitudes the lower row index goes first.
Matrix trim_residual(const Matrix& F, int tau);

// Settings for the row-sketched column pursuit and its row/column alternation.
struct Alg1Config {
  Index c1 = 2;      // rows sampled = c1 * r_hat
  Index c2 = 1;      // initial columns = c2 * r_hat
  Index r_hat = 1;   // known upper bound on the rank
  int tau = 10;      // trim percentage, 1..49
  int k_max = 3;
  SolverConfig solver;
  std::uint64_t seed = 0;
  // Replaces c1 * r_hat when set, for budgets that are not a multiple of r_hat.
  std::optional<Index> row_count;
  // Replaces the random initial columns when set.
  std::optional<IndexList> initial_column_list;

  Index rows_to_sample() const { return row_count.value_or(c1 * r_hat); }
  Index initial_columns() const {
    return initial_column_list ? static_cast<Index>(initial_column_list->size()) : c2 * r_hat;
  }
  void validate(Index rows, Index cols) const;
};

struct SketchState {
  IndexList row_indices;  // rows of D forming the row sketch
  IndexList col_indices;  // sampled columns, as indices into D
  Matrix F;               // last trimmed residual
  int iteration = 0;
};

// Steps 2.1 - 2.5 once: solve with the dictionary, drop dictionary columns
// whose coefficient rows are negligible, trim the residual, then append the
// `add_count` not-yet-sampled sketch columns with the largest trimmed norms.
struct PursuitPass {
  IndexList kept;        // dictionary after pruning, ascending
  IndexList added;       // new columns in order of decreasing residual norm
  IndexList dictionary;  // kept + added, ascending
  Matrix trimmed;        // trimmed residual
  SelectionResult solve;
};

PursuitPass pursuit_pass(const Matrix& sketch, const IndexList& dictionary,
                         Index add_count, int tau, const SolverConfig& solver);

struct Alg1Result {
  IndexList sampled;      // columns of D forming D_c
  IndexList informative;  // sampled columns kept by a final solve + prune
  SketchState state;
  std::vector<IndexList> history;  // sampled set after init and each iteration
  bool all_converged = true;
};

Alg1Result algorithm1(const Matrix& D, const Alg1Config& cfg);

struct RankPoint {
  Index r_c = 0;  // rank of the sampled columns
  Index r_w = 0;  // rank of the sampled rows
};

struct Alg2Result {
  IndexList cols;
  IndexList rows;
  Index initial_r_w = 0;
  std::vector<RankPoint> trace;  // one entry per cycle
  // True when ranks were measured on a supplied ground-truth L rather than D.
  bool trace_from_ground_truth = false;
  bool all_converged = true;
};

// Alternates a single column pass on the row sketch with a single row pass on
// the transposed column sketch, j_max times.
Alg2Result algorithm2(const Matrix& D, const Alg1Config& cfg, int j_max,
                      const Matrix* ground_truth = nullptr);

}  // namespace colpursuit

#endif  // COLPURSUIT_SAMPLING_HPP_
