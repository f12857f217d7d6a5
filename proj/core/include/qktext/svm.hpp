// Copyright 2026 The qktext authors
//
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

#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "qktext/errors.hpp"

namespace qktext {

struct SvmTrainConfig {
  double c = 1.0;
  double tol = 1e-3;
  long max_passes = 1000;
};

// Dual solution of a soft-margin SVM over a precomputed kernel.
// Invariants: 0 <= alpha_i <= c and sum_i alpha_i y_i == 0 (within 1e-8).
struct SvmModel {
  Eigen::VectorXd alphas;
  double bias = 0.0;
  std::vector<int> labels;  // +1 / -1, training order
  std::vector<Eigen::Index> support_indices;
  double c = 1.0;
  double tol = 1e-3;
};

// Training hit max_passes before the KKT conditions held. Carries the best
// iterate so callers can inspect or reuse it.
struct ConvergenceError : Error {
  SvmModel best;
  ConvergenceError(const std::string& what, SvmModel best_)
      : Error(what), best(std::move(best_)) {}
};

// Sequential minimal optimization with deterministic pair selection: first
// choice scans ascending over KKT violators (alternating all-point and
// non-bound passes), second choice maximizes |E_i - E_j| over non-bound
// points with lowest-index tie-break, then falls back to an ascending scan.
// Same inputs always produce the same model. The kernel must be PSD for the
// dual to be well defined; run indefinite estimates through repair_psd
// first.
SvmModel train_svm(const Eigen::MatrixXd& gram, const std::vector<int>& labels,
                   const SvmTrainConfig& cfg = {});

// sum_i alpha_i y_i k_row_i + bias, where k_row holds kernel values against
// every training point.
double decision_value(const SvmModel& model, const Eigen::VectorXd& k_row);

// Sign of the decision value; exact zero counts as +1.
int predict(const SvmModel& model, const Eigen::VectorXd& k_row);

// One prediction per row of a test-versus-train kernel block.
std::vector<int> predict(const SvmModel& model, const Eigen::MatrixXd& k_block);

double accuracy(const std::vector<int>& predicted,
                const std::vector<int>& expected);

// Dual objective sum(alpha) - 1/2 sum_ij alpha_i alpha_j y_i y_j K_ij.
double dual_objective(const Eigen::MatrixXd& gram,
                      const std::vector<int>& labels,
                      const Eigen::VectorXd& alphas);

// JSON round trip: {"alphas", "bias", "labels", "C", "tol"} at full
// precision.
void save_model(const std::string& path, const SvmModel& model);
SvmModel load_model(const std::string& path);

}  // namespace qktext
