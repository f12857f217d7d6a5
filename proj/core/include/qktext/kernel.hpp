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
#include <cstdint>
#include <string>
#include <vector>

#include "qktext/feature_map.hpp"

namespace qktext {

// Shot budget for kernel estimation. shots == 0 selects exact readout of the
// all-zeros probability; shots >= 1 samples that many measurements. seed is
// the master seed; per-entry streams are split via pair_seed().
struct ShotConfig {
  long shots = 0;
  std::uint64_t seed = 0;
};

// Fidelity kernel |<0|U(y)^dag U(x)|0>|^2 read off the statevector.
double exact_kernel(const FeatureMapSpec& map, const FeatureVector& x,
                    const FeatureVector& y);

// Same quantity estimated as the all-zeros frequency over cfg.shots
// measurements; (i, j) names the Gram entry so reruns reuse the same
// stream regardless of assembly order. cfg.shots == 0 falls back to exact.
double estimated_kernel(const FeatureMapSpec& map, const FeatureVector& x,
                        const FeatureVector& y, const ShotConfig& cfg,
                        std::size_t i, std::size_t j);

// Square kernel matrix over one vector set. Each unordered pair is
// estimated once and mirrored, so the result is bit-for-bit symmetric; in
// shot mode the diagonal is pinned to 1.0 without sampling.
Eigen::MatrixXd gram_matrix(const FeatureMapSpec& map,
                            const std::vector<FeatureVector>& vectors,
                            const ShotConfig& cfg);

// Rectangular block K[i][j] = k(rows[i], cols[j]).
Eigen::MatrixXd gram_block(const FeatureMapSpec& map,
                           const std::vector<FeatureVector>& rows,
                           const std::vector<FeatureVector>& cols,
                           const ShotConfig& cfg);

// Plain dot-product Gram for the classical baseline.
Eigen::MatrixXd linear_gram(const std::vector<FeatureVector>& rows,
                            const std::vector<FeatureVector>& cols);

struct PsdRepair {
  Eigen::MatrixXd matrix;
  double shift = 0.0;  // multiple of identity that was added
};

// Shifts a symmetric matrix just past PSD when its smallest eigenvalue is
// negative: K + (-lambda_min + 1e-8) * I. PSD inputs pass through
// unchanged, so the operation is idempotent.
PsdRepair repair_psd(const Eigen::MatrixXd& gram);

double frobenius_distance(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b);

// Kernel matrix on disk: a "k=v,k=v" header line, then one CSV row per
// matrix row with full round-trip precision. Square matrices carry
// n=<count>,shots=<R>,seed=<s>; rectangular blocks add m=<cols>.
struct GramFile {
  Eigen::MatrixXd matrix;
  long shots = 0;
  std::uint64_t seed = 0;
};

void write_gram_csv(const std::string& path, const Eigen::MatrixXd& matrix,
                    long shots, std::uint64_t seed);
GramFile read_gram_csv(const std::string& path);

}  // namespace qktext
