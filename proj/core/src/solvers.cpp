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

#include "colpursuit/solvers.hpp"

#include <algorithm>
#include <cmath>

#include "colpursuit/prox.hpp"

namespace colpursuit {

namespace {

// The A-update solves (I + dict^T dict) A = (Z + dict^T W) / mu, with the
// factorization computed once per solve. When the dictionary has fewer rows
// than columns the Woodbury identity
//   (I + D^T D)^{-1} = I - D^T K^{-1} D,   K = I + D D^T
// swaps the m x m factor for an m2 x m2 one, and D A falls out of the same
// inner solve: D A = K^{-1} D (Z + D^T W) / mu.
class RegularizedGram {
 public:
  explicit RegularizedGram(const Matrix& dict)
      : dict_(dict), woodbury_(dict.rows() < dict.cols()) {
    Matrix gram;
    if (woodbury_) {
      outer_ = dict * dict.transpose();
      gram = outer_;
    } else {
      gram = dict.transpose() * dict;
    }
    gram.diagonal().array() += 1.0;
    llt_.compute(gram);
    if (llt_.info() != Eigen::Success)
      throw NumericalError("factorization of I + D^T D failed");
  }

  // Writes A and dict * A.
  void solve(const Matrix& Z, const Matrix& W, double inv_mu, Matrix& A,
             Matrix& DA) const {
    if (woodbury_) {
      Matrix inner = dict_ * Z;
      inner.noalias() += outer_ * W;
      llt_.solveInPlace(inner);
      Matrix spread = W - inner;
      A = Z;
      A.noalias() += dict_.transpose() * spread;
      A *= inv_mu;
      DA = inv_mu * inner;
    } else {
      A = Z;
      A.noalias() += dict_.transpose() * W;
      llt_.solveInPlace(A);
      A *= inv_mu;
      DA.noalias() = dict_ * A;
    }
  }

 private:
  const Matrix& dict_;
  bool woodbury_;
  Matrix outer_;
  Eigen::LLT<Matrix> llt_;
};

struct AdmmOutput {
  Matrix B;
  Matrix E;
  SolveInfo info;
};

// Shared iteration for both programs. With `outlier_mode` the residual split is
// Q = target - dict A + E, E is a column-sparse absorber and diag(B) is held
// at zero; otherwise E stays zero.
AdmmOutput run_admm(const Matrix& raw_target, const Matrix& raw_dict,
                    const SolverConfig& cfg, bool outlier_mode) {
  const ResolvedWeights w = resolve_weights(cfg, raw_target);

  // Iterate on data divided by its mean absolute entry. The objective scales
  // exactly by that factor, so A is unchanged and E is rescaled on return.
  const double mean_abs = raw_target.cwiseAbs().mean();
  const double scale = mean_abs > 0.0 ? mean_abs : 1.0;
  const Matrix target = raw_target / scale;
  const Matrix dict = raw_dict / scale;
  const double gamma = w.gamma / scale;
  const double mu = w.mu * scale;
  const double inv_mu = 1.0 / mu;

  const Index m = dict.cols();
  const Index n = target.cols();
  const RegularizedGram gram(dict);
  const double target_scale = std::max(1.0, target.norm());

  Matrix B = Matrix::Zero(m, n);
  Matrix Q = Matrix::Zero(target.rows(), n);
  Matrix E = Matrix::Zero(target.rows(), n);
  Matrix Y1 = Matrix::Zero(m, n);
  Matrix Y2 = Matrix::Zero(target.rows(), n);
  Matrix A, DA, V, residual;
  Matrix prev_B = B;
  Matrix prev_split = Q;

  SolveInfo info;
  info.weights = w;
  for (int k = 1; k <= cfg.max_iters; ++k) {
    // A: regularized least squares.
    const Matrix W = mu * (target + E - Q) - Y2;
    const Matrix Z = mu * B + Y1;
    gram.solve(Z, W, inv_mu, A, DA);

    // Q: elementwise l1 prox.
    Q = target - DA + E - inv_mu * Y2;
    soft_threshold_inplace(Q, inv_mu);

    if (outlier_mode) {
      E = Q - target + DA + inv_mu * Y2;
      column_threshold_inplace(E, cfg.lambda * inv_mu);
    }

    // B: row-group prox, diagonal pinned to zero first in outlier mode.
    V = A - inv_mu * Y1;
    if (outlier_mode) V.diagonal().setZero();
    row_threshold_inplace(V, gamma * inv_mu);
    B.swap(V);

    residual = Q - target + DA - E;
    Y1.noalias() += mu * (B - A);
    Y2.noalias() += mu * residual;

    info.iterations = k;
    const double coupling = (B - A).norm();
    const double res = residual.norm();
    info.primal_res1 = coupling / std::max(1.0, A.norm());
    info.primal_res2 = res / target_scale;

    const double change1 = (B - prev_B).norm();
    Matrix split = Q - E;
    const double change2 = (split - prev_split).norm();
    const double dual1 = change1 / std::max(1.0, B.norm());
    const double dual2 = change2 / target_scale;
    if (cfg.record_history) {
      info.history.push_back({info.primal_res1, info.primal_res2,
                              coupling * coupling + res * res + change1 * change1 +
                                  change2 * change2});
    }
    prev_B = B;
    prev_split.swap(split);

    if (info.primal_res1 <= cfg.tol && info.primal_res2 <= cfg.tol &&
        dual1 <= cfg.tol && dual2 <= cfg.tol) {
      info.converged = true;
      break;
    }
  }
  E *= scale;
  return {std::move(B), std::move(E), std::move(info)};
}

SelectionResult finish_selection(Matrix B, SolveInfo info, const SolverConfig& cfg) {
  SelectionResult out;
  out.p = row_norms(B);
  out.selected = selection_from_p(out.p, cfg.selection_threshold);
  out.A_star = std::move(B);
  out.info = std::move(info);
  return out;
}

void check_inputs(const Matrix& target, const Matrix& dict) {
  if (target.rows() < 1 || target.cols() < 1 || dict.cols() < 1)
    throw std::invalid_argument("solver inputs must be non-empty");
  if (target.rows() != dict.rows())
    throw std::invalid_argument("target and dictionary row counts differ");
  if (!all_finite(target) || !all_finite(dict))
    throw std::invalid_argument("solver inputs contain non-finite values");
}

}  // namespace

void SolverConfig::validate() const {
  if (gamma && !(*gamma > 0.0)) throw std::invalid_argument("gamma must be positive");
  if (!(lambda > 0.0)) throw std::invalid_argument("lambda must be positive");
  if (gamma_rel && !(*gamma_rel > 0.0)) throw std::invalid_argument("gamma_rel must be positive");
  if (mu && !(*mu > 0.0)) throw std::invalid_argument("mu must be positive");
  if (!(mu_scale > 0.0)) throw std::invalid_argument("mu_scale must be positive");
  if (max_iters < 1) throw std::invalid_argument("max_iters must be at least 1");
  if (!(tol > 0.0)) throw std::invalid_argument("tol must be positive");
  if (!(zero_row_eps > 0.0)) throw std::invalid_argument("zero_row_eps must be positive");
  if (!(selection_threshold > 0.0 && selection_threshold < 1.0))
    throw std::invalid_argument("selection_threshold must lie in (0, 1)");
}

ResolvedWeights resolve_weights(const SolverConfig& cfg, const Matrix& target) {
  ResolvedWeights w;
  const double mean_abs = target.size() ? target.cwiseAbs().mean() : 0.0;
  if (cfg.gamma) {
    w.gamma = *cfg.gamma;
  } else if (cfg.gamma_rel) {
    w.gamma = *cfg.gamma_rel * (mean_abs > 0.0 ? mean_abs : 1.0);
  } else {
    w.gamma = 0.5 / std::sqrt(static_cast<double>(std::max(target.rows(), target.cols())));
  }
  if (cfg.mu) {
    w.mu = *cfg.mu;
  } else {
    w.mu = mean_abs > 0.0 ? cfg.mu_scale / mean_abs : cfg.mu_scale;
  }
  return w;
}

Vector row_norms(const Matrix& a) { return a.rowwise().norm(); }

IndexList selection_from_p(const Vector& p, double rel_threshold) {
  IndexList out;
  if (p.size() == 0) return out;
  const double peak = p.maxCoeff();
  if (!(peak > 0.0)) return out;
  const double cut = rel_threshold * peak;
  for (Index i = 0; i < p.size(); ++i)
    if (p(i) > cut) out.push_back(i);
  return out;
}

double selfexpress_objective(const Matrix& target, const Matrix& dict,
                             const Matrix& A, double gamma) {
  return (target - dict * A).cwiseAbs().sum() + gamma * row_norms(A).sum();
}

double outlier_robust_objective(const Matrix& D, const Matrix& A, const Matrix& E,
                                double gamma, double lambda) {
  return (D - D * A + E).cwiseAbs().sum() + gamma * row_norms(A).sum() +
         lambda * E.colwise().norm().sum();
}

SelectionResult solve_selfexpress(const Matrix& target, const Matrix& dict,
                                  const SolverConfig& cfg) {
  cfg.validate();
  check_inputs(target, dict);
  AdmmOutput run = run_admm(target, dict, cfg, false);
  run.info.objective =
      selfexpress_objective(target, dict, run.B, run.info.weights.gamma);
  return finish_selection(std::move(run.B), std::move(run.info), cfg);
}

OutlierRobustResult solve_outlier_robust(const Matrix& D, const SolverConfig& cfg) {
  cfg.validate();
  check_inputs(D, D);
  AdmmOutput run = run_admm(D, D, cfg, true);
  run.info.objective = outlier_robust_objective(D, run.B, run.E, run.info.weights.gamma,
                                                cfg.lambda);
  OutlierRobustResult out;
  out.E_star = std::move(run.E);
  out.selection = finish_selection(std::move(run.B), std::move(run.info), cfg);
  return out;
}

}  // namespace colpursuit
