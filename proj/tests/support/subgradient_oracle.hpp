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


// Projected subgradient descent on the self-expressive and outlier-robust
// objectives. Slow and approximate, but shares no code with the ADMM solvers.
// Normalized steps a / sqrt(k) restarted in epochs with a halved base step;
// the best iterate seen is returned.

#ifndef COLPURSUIT_TESTS_SUBGRADIENT_ORACLE_HPP_
#define COLPURSUIT_TESTS_SUBGRADIENT_ORACLE_HPP_

#include <cmath>

#include <Eigen/Dense>

namespace colpursuit::testing {

struct OracleOptions {
  long iterations = 200000;
  int epochs = 10;
  double step = 0.3;
  double decay = 0.5;
};

inline Eigen::MatrixXd sign_of(const Eigen::MatrixXd& m) {
  return m.unaryExpr([](double v) { return static_cast<double>((v > 0.0) - (v < 0.0)); });
}

inline double oracle_selfexpress_objective(const Eigen::MatrixXd& D, const Eigen::MatrixXd& A,
                                           double gamma) {
  return (D - D * A).cwiseAbs().sum() + gamma * A.rowwise().norm().sum();
}

inline double oracle_outlier_objective(const Eigen::MatrixXd& D, const Eigen::MatrixXd& A,
                                       const Eigen::MatrixXd& E, double gamma, double lambda) {
  return (D - D * A + E).cwiseAbs().sum() + gamma * A.rowwise().norm().sum() +
         lambda * E.colwise().norm().sum();
}

// min ||D - D A||_1 + gamma ||A^T||_{1,2}
inline double subgradient_selfexpress(const Eigen::MatrixXd& D, double gamma,
                                      const OracleOptions& opt = {}) {
  const long n = D.cols();
  Eigen::MatrixXd best_A = Eigen::MatrixXd::Zero(n, n);
  double best = oracle_selfexpress_objective(D, best_A, gamma);
  const long per_epoch = opt.iterations / opt.epochs;
  for (int e = 0; e < opt.epochs; ++e) {
    Eigen::MatrixXd A = best_A;
    const double a = opt.step * std::pow(opt.decay, e);
    for (long k = 0; k < per_epoch; ++k) {
      Eigen::MatrixXd G = -D.transpose() * sign_of(D - D * A);
      for (long i = 0; i < n; ++i) {
        const double r = A.row(i).norm();
        if (r > 0.0) G.row(i) += gamma * A.row(i) / r;
      }
      const double g = G.norm();
      if (g == 0.0) break;
      A -= (a / std::sqrt(k + 1.0)) * G / g;
      const double f = oracle_selfexpress_objective(D, A, gamma);
      if (f < best) {
        best = f;
        best_A = A;
      }
    }
  }
  return best;
}

// min ||D - D A + E||_1 + gamma ||A^T||_{1,2} + lambda ||E||_{1,2}, diag(A) = 0
inline double subgradient_outlier_robust(const Eigen::MatrixXd& D, double gamma, double lambda,
                                         const OracleOptions& opt = {}) {
  const long n = D.cols();
  Eigen::MatrixXd best_A = Eigen::MatrixXd::Zero(n, n);
  Eigen::MatrixXd best_E = Eigen::MatrixXd::Zero(D.rows(), n);
  double best = oracle_outlier_objective(D, best_A, best_E, gamma, lambda);
  const long per_epoch = opt.iterations / opt.epochs;
  for (int e = 0; e < opt.epochs; ++e) {
    Eigen::MatrixXd A = best_A;
    Eigen::MatrixXd E = best_E;
    const double a = opt.step * std::pow(opt.decay, e);
    for (long k = 0; k < per_epoch; ++k) {
      const Eigen::MatrixXd s = sign_of(D - D * A + E);
      Eigen::MatrixXd GA = -D.transpose() * s;
      Eigen::MatrixXd GE = s;
      for (long i = 0; i < n; ++i) {
        const double r = A.row(i).norm();
        if (r > 0.0) GA.row(i) += gamma * A.row(i) / r;
        const double c = E.col(i).norm();
        if (c > 0.0) GE.col(i) += lambda * E.col(i) / c;
      }
      GA.diagonal().setZero();
      const double g = std::sqrt(GA.squaredNorm() + GE.squaredNorm());
      if (g == 0.0) break;
      const double step = (a / std::sqrt(k + 1.0)) / g;
      A -= step * GA;
      E -= step * GE;
      A.diagonal().setZero();
      const double f = oracle_outlier_objective(D, A, E, gamma, lambda);
      if (f < best) {
        best = f;
        best_A = A;
        best_E = E;
      }
    }
  }
  return best;
}

}  // namespace colpursuit::testing

#endif  // COLPURSUIT_TESTS_SUBGRADIENT_ORACLE_HPP_
