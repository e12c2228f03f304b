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

#include "colpursuit/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "colpursuit/evaluation.hpp"
#include "colpursuit/rng.hpp"

namespace colpursuit {

namespace {

// Indices of the `count` largest values, ties to the lower index, skipping
// excluded positions.
IndexList top_indices(const Vector& values, Index count, const std::vector<char>& excluded) {
  IndexList order;
  for (Index i = 0; i < values.size(); ++i)
    if (!excluded[static_cast<std::size_t>(i)]) order.push_back(i);
  const auto cmp = [&](Index a, Index b) {
    if (values(a) != values(b)) return values(a) > values(b);
    return a < b;
  };
  const Index take = std::min<Index>(count, static_cast<Index>(order.size()));
  std::partial_sort(order.begin(), order.begin() + take, order.end(), cmp);
  order.resize(static_cast<std::size_t>(take));
  return order;
}

IndexList merge_sorted(IndexList a, const IndexList& b) {
  a.insert(a.end(), b.begin(), b.end());
  std::sort(a.begin(), a.end());
  a.erase(std::unique(a.begin(), a.end()), a.end());
  return a;
}

// Positions whose coefficient row norm exceeds eps * max.
std::vector<Index> nonzero_rows(const Vector& p, double rel_eps) {
  std::vector<Index> out;
  if (p.size() == 0) return out;
  const double peak = p.maxCoeff();
  if (!(peak > 0.0)) return out;
  for (Index i = 0; i < p.size(); ++i)
    if (p(i) > rel_eps * peak) out.push_back(i);
  return out;
}

}  // namespace

Index suggested_row_count(Index r, Index N1, double c, double delta) {
  if (r < 1) throw std::invalid_argument("suggested_row_count: r must be at least 1");
  if (N1 < 1) throw std::invalid_argument("suggested_row_count: N1 must be at least 1");
  if (!(c > 0.0)) throw std::invalid_argument("suggested_row_count: c must be positive");
  if (!(delta > 0.0 && delta < 1.0))
    throw std::invalid_argument("suggested_row_count: delta must lie in (0, 1)");
  const double rd = static_cast<double>(r);
  const double phi = std::max(rd, std::log(static_cast<double>(N1))) / rd;
  return static_cast<Index>(std::ceil(10.0 * c * rd * phi * std::log(2.0 * rd / delta)));
}

Matrix trim_residual(const Matrix& F, int tau) {
  if (tau < 1 || tau > 49) throw std::invalid_argument("trim_residual: tau must lie in [1, 49]");
  Matrix out = F;
  const Index rows = F.rows();
  const Index count = (static_cast<Index>(tau) * rows + 99) / 100;
  std::vector<Index> order(static_cast<std::size_t>(rows));
  for (Index j = 0; j < F.cols(); ++j) {
    std::iota(order.begin(), order.end(), Index{0});
    const auto col = F.col(j);
    std::partial_sort(order.begin(), order.begin() + count, order.end(), [&](Index a, Index b) {
      const double fa = std::abs(col(a));
      const double fb = std::abs(col(b));
      if (fa != fb) return fa > fb;
      return a < b;
    });
    for (Index k = 0; k < count; ++k) out(order[static_cast<std::size_t>(k)], j) = 0.0;
  }
  return out;
}

void Alg1Config::validate(Index rows, Index cols) const {
  if (c1 < 1 || c2 < 1) throw std::invalid_argument("c1 and c2 must be positive");
  if (r_hat < 1) throw std::invalid_argument("r_hat must be positive");
  if (tau < 1 || tau > 49) throw std::invalid_argument("tau must lie in [1, 49]");
  if (k_max < 1) throw std::invalid_argument("k_max must be positive");
  const Index m2 = rows_to_sample();
  if (m2 < 1 || m2 > rows)
    throw std::invalid_argument("row sketch size " + std::to_string(m2) +
                                " outside [1, " + std::to_string(rows) + "]");
  if (initial_columns() > cols)
    throw std::invalid_argument("c2 * r_hat = " + std::to_string(initial_columns()) +
                                " exceeds column count " + std::to_string(cols));
  if (initial_column_list) {
    if (initial_column_list->empty()) throw std::invalid_argument("initial column list is empty");
    std::vector<char> seen(static_cast<std::size_t>(cols), 0);
    for (Index j : *initial_column_list) {
      if (j < 0 || j >= cols) throw std::invalid_argument("initial column index out of range");
      if (seen[static_cast<std::size_t>(j)]++) throw std::invalid_argument("duplicate initial column");
    }
  }
  solver.validate();
}

namespace {

IndexList initial_dictionary(const Alg1Config& cfg, Index cols, Engine& engine) {
  if (!cfg.initial_column_list)
    return sample_without_replacement(cols, cfg.initial_columns(), engine);
  IndexList out = *cfg.initial_column_list;
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

PursuitPass pursuit_pass(const Matrix& sketch, const IndexList& dictionary, Index add_count,
                         int tau, const SolverConfig& solver) {
  if (dictionary.empty()) throw std::invalid_argument("pursuit_pass: empty dictionary");
  PursuitPass pass;
  const Matrix dict = select_columns(sketch, dictionary);
  pass.solve = solve_selfexpress(sketch, dict, solver);

  // 2.2: drop dictionary columns with negligible rows in A*.
  const std::vector<Index> live = nonzero_rows(pass.solve.p, solver.zero_row_eps);
  Matrix kept_dict(sketch.rows(), static_cast<Index>(live.size()));
  Matrix kept_coef(static_cast<Index>(live.size()), sketch.cols());
  for (std::size_t k = 0; k < live.size(); ++k) {
    pass.kept.push_back(dictionary[static_cast<std::size_t>(live[k])]);
    kept_dict.col(static_cast<Index>(k)) = dict.col(live[k]);
    kept_coef.row(static_cast<Index>(k)) = pass.solve.A_star.row(live[k]);
  }

  // 2.3: residual with the large entries removed column by column.
  Matrix F = sketch;
  if (!live.empty()) F.noalias() -= kept_dict * kept_coef;
  pass.trimmed = trim_residual(F, tau);

  // 2.4: columns with the largest remaining residual that are not yet sampled.
  std::vector<char> excluded(static_cast<std::size_t>(sketch.cols()), 0);
  for (Index j : dictionary) excluded[static_cast<std::size_t>(j)] = 1;
  pass.added = top_indices(pass.trimmed.colwise().norm().transpose(), add_count, excluded);

  // 2.5
  pass.dictionary = merge_sorted(pass.kept, pass.added);
  if (pass.dictionary.empty()) pass.dictionary = dictionary;
  return pass;
}

Alg1Result algorithm1(const Matrix& D, const Alg1Config& cfg) {
  cfg.validate(D.rows(), D.cols());
  if (!all_finite(D)) throw std::invalid_argument("algorithm1: non-finite input");

  Alg1Result out;
  Engine row_engine(derive_seed(cfg.seed, Stream::kRowSketch));
  Engine col_engine(derive_seed(cfg.seed, Stream::kColumnSketch));
  out.state.row_indices = sample_without_replacement(D.rows(), cfg.rows_to_sample(), row_engine);
  const Matrix sketch = select_rows(D, out.state.row_indices);
  out.state.col_indices = initial_dictionary(cfg, D.cols(), col_engine);
  out.history.push_back(out.state.col_indices);

  for (int k = 1; k <= cfg.k_max; ++k) {
    PursuitPass pass =
        pursuit_pass(sketch, out.state.col_indices, 2 * cfg.r_hat, cfg.tau, cfg.solver);
    out.all_converged = out.all_converged && pass.solve.info.converged;
    out.state.col_indices = std::move(pass.dictionary);
    out.state.F = std::move(pass.trimmed);
    out.state.iteration = k;
    out.history.push_back(out.state.col_indices);
  }
  out.sampled = out.state.col_indices;

  // Redundant columns of the final dictionary.
  const SelectionResult last =
      solve_selfexpress(sketch, select_columns(sketch, out.sampled), cfg.solver);
  out.all_converged = out.all_converged && last.info.converged;
  for (Index i : nonzero_rows(last.p, cfg.solver.zero_row_eps))
    out.informative.push_back(out.sampled[static_cast<std::size_t>(i)]);
  return out;
}

Alg2Result algorithm2(const Matrix& D, const Alg1Config& cfg, int j_max,
                      const Matrix* ground_truth) {
  cfg.validate(D.rows(), D.cols());
  if (j_max < 1) throw std::invalid_argument("algorithm2: j_max must be positive");
  if (!all_finite(D)) throw std::invalid_argument("algorithm2: non-finite input");
  if (ground_truth && (ground_truth->rows() != D.rows() || ground_truth->cols() != D.cols()))
    throw std::invalid_argument("algorithm2: ground truth shape differs from D");

  const Matrix& reference = ground_truth ? *ground_truth : D;
  Alg2Result out;
  out.trace_from_ground_truth = ground_truth != nullptr;

  Engine row_engine(derive_seed(cfg.seed, Stream::kRowSketch));
  Engine col_engine(derive_seed(cfg.seed, Stream::kColumnSketch));
  out.rows = sample_without_replacement(D.rows(), cfg.rows_to_sample(), row_engine);
  out.cols = initial_dictionary(cfg, D.cols(), col_engine);
  out.initial_r_w = rank_of(select_rows(reference, out.rows));

  for (int j = 1; j <= j_max; ++j) {
    // Column pass on the row sketch D_w; X is D_w restricted to `cols`.
    {
      PursuitPass pass = pursuit_pass(select_rows(D, out.rows), out.cols, 2 * cfg.r_hat,
                                      cfg.tau, cfg.solver);
      out.all_converged = out.all_converged && pass.solve.info.converged;
      out.cols = std::move(pass.dictionary);
    }
    // Row pass on D_c^T; X^T is D_c^T restricted to `rows`.
    {
      const Matrix column_sketch_t = select_columns(D, out.cols).transpose();
      PursuitPass pass =
          pursuit_pass(column_sketch_t, out.rows, 2 * cfg.r_hat, cfg.tau, cfg.solver);
      out.all_converged = out.all_converged && pass.solve.info.converged;
      out.rows = std::move(pass.dictionary);
    }
    out.trace.push_back({rank_of(select_columns(reference, out.cols)),
                         rank_of(select_rows(reference, out.rows))});
  }
  return out;
}

}  // namespace colpursuit
