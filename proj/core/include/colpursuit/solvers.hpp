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

#ifndef COLPURSUIT_SOLVERS_HPP_
#define COLPURSUIT_SOLVERS_HPP_

#include <optional>
#include <vector>

#include "colpursuit/types.hpp"

namespace colpursuit {

// Weights and budget for the ADMM solves.
//
// gamma and mu are resolved per problem from the target matrix:
//   gamma = *gamma if set, else *gamma_rel * mean(|target|) if set,
//           else 0.5 / sqrt(max(rows(target), cols(target)))
//   mu    = *mu if set, else mu_scale / mean(|target|)
// The relative forms make a config invariant under rescaling of the data.
struct SolverConfig {
  std::optional<double> gamma;      // row-group weight, absolute
  std::optional<double> gamma_rel;  // row-group weight per unit mean |entry|
  double lambda = 0.5;              // outlier-column weight (outlier-robust only)
  std::optional<double> mu;         // fixed ADMM penalty, absolute
  double mu_scale = 10.0;
  int max_iters = 5000;
  double tol = 1e-6;            // relative residual threshold
  double zero_row_eps = 1e-3;   // relative row-norm cutoff for "zero" rows
  double selection_threshold = 1e-2;  // relative cutoff applied to p
  bool record_history = false;

  void validate() const;  // throws std::invalid_argument
};

struct ResolvedWeights {
  double gamma = 0.0;
  double mu = 0.0;
};

ResolvedWeights resolve_weights(const SolverConfig& cfg, const Matrix& target);

struct ResidualSample {
  double primal_coupling = 0.0;   // ||B - A||_F, relative
  double primal_residual = 0.0;   // ||Q - target + dict A - E||_F, relative
  // Squared primal residuals plus squared changes of B and Q - E, in the
  // solver's normalized units. Non-increasing for the self-expressive program.
  double combined = 0.0;
};

struct SolveInfo {
  int iterations = 0;
  bool converged = false;
  double primal_res1 = 0.0;
  double primal_res2 = 0.0;
  double objective = 0.0;
  ResolvedWeights weights;
  std::vector<ResidualSample> history;
};

struct SelectionResult {
  Matrix A_star;     // dictionary-size x target columns
  Vector p;          // l2 norm of each row of A_star
  IndexList selected;
  SolveInfo info;
};

// Indices i with p(i) > rel_threshold * max(p). Empty iff p == 0.
IndexList selection_from_p(const Vector& p, double rel_threshold);

// l2 norm of every row.
Vector row_norms(const Matrix& a);

// min ||target - dict A||_1 + gamma ||A^T||_{1,2}
//
// The direct program is dict == target, the row-sketched program has both
// equal to the row sketch, and the iterative variant uses sampled columns of
// the sketch as dictionary. A* is taken from the group-sparse split B.
// Non-convergence is reported in info.converged, not thrown.
SelectionResult solve_selfexpress(const Matrix& target, const Matrix& dict,
                                  const SolverConfig& cfg);

struct OutlierRobustResult {
  SelectionResult selection;
  Matrix E_star;
};

// min ||D - D A + E||_1 + gamma ||A^T||_{1,2} + lambda ||E||_{1,2}
//   s.t. diag(A) = 0
OutlierRobustResult solve_outlier_robust(const Matrix& D, const SolverConfig& cfg);

double selfexpress_objective(const Matrix& target, const Matrix& dict,
                             const Matrix& A, double gamma);
double outlier_robust_objective(const Matrix& D, const Matrix& A,
                                const Matrix& E, double gamma, double lambda);

}  // namespace colpursuit

#endif  // COLPURSUIT_SOLVERS_HPP_
