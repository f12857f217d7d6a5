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

#include <cstdint>
#include <string>
#include <vector>

#include "qktext/corpus.hpp"
#include "qktext/embedding.hpp"
#include "qktext/kernel.hpp"
#include "qktext/svm.hpp"

namespace qktext {

// Configuration problem that the user must fix (maps to exit code 1).
struct UsageError : Error {
  using Error::Error;
};

// Numeric failure of an aggregate run (maps to exit code 3).
struct NumericError : Error {
  using Error::Error;
};

enum class DatasetKind { kLambeq, kImdb };
enum class MapChoice { kAmplitude, kZz, kLinear };

// One flat key=value per line, '#' comments, UTF-8. Unknown keys are usage
// errors. See the README for the full key list.
struct RunConfig {
  DatasetKind dataset = DatasetKind::kLambeq;
  std::string data_path;
  std::string embedding = "self";  // "self" or "file"
  std::string embedding_file;
  int dim = 8;
  int window = 5;
  MapChoice map = MapChoice::kAmplitude;
  int qubits = 0;  // 0 = derive from dim (amplitude: ceil(log2 dim); zz: dim)
  int reps = 2;
  long shots = 10000;
  std::vector<std::uint64_t> seeds = {7};
  std::size_t n_train = 70;
  std::size_t n_test = 30;
  double svm_c = 1.0;
  double svm_tol = 1e-3;
  long svm_max_passes = 1000;
  std::string out_dir = ".";
  std::vector<int> dims;  // experiment sweep rows; empty means {dim}
};

RunConfig load_config(const std::string& path);

// Throws UsageError on any statically invalid combination (dim < 1,
// ZZ qubit/dimension mismatch, odd split sizes, ...).
void validate_config(const RunConfig& cfg);

// Resolved qubit count for one (map, dim) pair.
int resolve_qubits(MapChoice map, int qubits, int dim);

// Embedded and split dataset for one seed.
struct EmbeddedSplit {
  std::vector<FeatureVector> train_x;
  std::vector<FeatureVector> test_x;
  std::vector<int> train_y;  // +1 / -1
  std::vector<int> test_y;
  LabeledDataset train_docs;
  LabeledDataset test_docs;
};

LabeledDataset load_dataset(const RunConfig& cfg);

// Samples the split for `seed`, trains (or loads) embeddings, and averages
// token vectors per document. Self-trained embeddings use the sampled
// documents as their corpus.
EmbeddedSplit embed_split(const RunConfig& cfg, const LabeledDataset& dataset,
                          std::uint64_t seed, int dim);

// Feature rows on disk: header, then one row per document as
// <label>,<x0>,...,<xd-1>,<train|test>. Train rows precede test rows.
void write_features_csv(const std::string& path, const EmbeddedSplit& split);
EmbeddedSplit read_features_csv(const std::string& path);

// Kernel matrices for one embedded split. ZZ inputs are rescaled into
// [0, pi] per dimension with bounds fit on the training rows. For
// shots > 0 the exact matrices ride along with the Frobenius distances
// between the two.
struct KernelStage {
  Eigen::MatrixXd train;  // n_train x n_train
  Eigen::MatrixXd test;   // n_test x n_train
  Eigen::MatrixXd train_exact;
  Eigen::MatrixXd test_exact;
  double train_distance = 0.0;
  double test_distance = 0.0;
};

KernelStage compute_kernels(const RunConfig& cfg, MapChoice map, int dim,
                            const EmbeddedSplit& split, std::uint64_t seed);

// repair_psd + train + evaluate.
struct EvalOutcome {
  SvmModel model;
  double psd_shift = 0.0;
  double train_accuracy = 0.0;
  double test_accuracy = 0.0;
};

EvalOutcome train_eval(const Eigen::MatrixXd& train_gram,
                       const std::vector<int>& train_y,
                       const Eigen::MatrixXd& test_block,
                       const std::vector<int>& test_y,
                       const SvmTrainConfig& svm_cfg);

// Mean and sample standard deviation (n-1 denominator; zero for a single
// value, flagged in reports).
struct Stats {
  std::vector<double> per_seed;
  double mean = 0.0;
  double stddev = 0.0;
};
Stats make_stats(std::vector<double> values);
std::string format_cell(const Stats& stats);  // "0.621±0.132"

// Sweep result: rows = dims, columns = {csvm, zz, amplitude} accuracies
// plus a bag-of-words baseline, all over cfg.seeds. Per-seed pipelines are
// independent; a convergence failure marks the seed failed, and more than
// half the seeds failing raises NumericError. Writes experiment.json and
// experiment.csv under cfg.out_dir and returns the JSON payload.
std::string run_experiment(const RunConfig& cfg);

// Stage entry points used by the CLI; `seed` names the output files.
// Returns the path of the main artifact written.
std::string cmd_embed(const RunConfig& cfg, std::uint64_t seed);
std::string cmd_kernel(const RunConfig& cfg, std::uint64_t seed);
std::string cmd_train_eval(const RunConfig& cfg, std::uint64_t seed);

}  // namespace qktext
