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

#include "qktext/kernel.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "qktext/errors.hpp"
#include "qktext/rng.hpp"

namespace qktext {

namespace {

double overlap_probability(const FeatureMapSpec& map, const FeatureVector& x,
                           const FeatureVector& y) {
  const Circuit prep = feature_circuit(map, x);
  const Circuit unprep = adjoint(feature_circuit(map, y));
  QuantumState state = run_circuit(prep, zero_state(map.n_qubits));
  state = run_circuit(unprep, std::move(state));
  return zero_probability(state);
}

long zero_outcomes(const MeasurementCounts& counts, int n_qubits) {
  const auto it = counts.counts.find(std::string(static_cast<std::size_t>(n_qubits), '0'));
  return it == counts.counts.end() ? 0 : it->second;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

double exact_kernel(const FeatureMapSpec& map, const FeatureVector& x,
                    const FeatureVector& y) {
  return overlap_probability(map, x, y);
}

double estimated_kernel(const FeatureMapSpec& map, const FeatureVector& x,
                        const FeatureVector& y, const ShotConfig& cfg,
                        std::size_t i, std::size_t j) {
  if (cfg.shots < 0) {
    throw ArgumentError("estimated_kernel: shots must be >= 0");
  }
  if (cfg.shots == 0) return exact_kernel(map, x, y);
  const Circuit prep = feature_circuit(map, x);
  const Circuit unprep = adjoint(feature_circuit(map, y));
  QuantumState state = run_circuit(prep, zero_state(map.n_qubits));
  state = run_circuit(unprep, std::move(state));
  const MeasurementCounts counts =
      sample_counts(state, cfg.shots, pair_seed(cfg.seed, i, j));
  return static_cast<double>(zero_outcomes(counts, map.n_qubits)) /
         static_cast<double>(cfg.shots);
}

Eigen::MatrixXd gram_matrix(const FeatureMapSpec& map,
                            const std::vector<FeatureVector>& vectors,
                            const ShotConfig& cfg) {
  const std::size_t n = vectors.size();
  if (n == 0) throw ArgumentError("gram_matrix: no vectors");
  Eigen::MatrixXd k(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      double value;
      if (i == j) {
        // Diagonal entries are 1 by construction; sampling them would only
        // add noise, so shot mode pins them.
        value = cfg.shots > 0 ? 1.0 : exact_kernel(map, vectors[i], vectors[i]);
      } else {
        value = estimated_kernel(map, vectors[i], vectors[j], cfg, i, j);
      }
      k(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = value;
      k(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) = value;
    }
  }
  return k;
}

Eigen::MatrixXd gram_block(const FeatureMapSpec& map,
                           const std::vector<FeatureVector>& rows,
                           const std::vector<FeatureVector>& cols,
                           const ShotConfig& cfg) {
  if (rows.empty() || cols.empty()) {
    throw ArgumentError("gram_block: empty row or column set");
  }
  Eigen::MatrixXd k(rows.size(), cols.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < cols.size(); ++j) {
      k(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          estimated_kernel(map, rows[i], cols[j], cfg, i, j);
    }
  }
  return k;
}

Eigen::MatrixXd linear_gram(const std::vector<FeatureVector>& rows,
                            const std::vector<FeatureVector>& cols) {
  if (rows.empty() || cols.empty()) {
    throw ArgumentError("linear_gram: empty row or column set");
  }
  Eigen::MatrixXd k(rows.size(), cols.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < cols.size(); ++j) {
      if (rows[i].size() != cols[j].size()) {
        throw ShapeError("linear_gram: dimension mismatch");
      }
      k(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          rows[i].dot(cols[j]);
    }
  }
  return k;
}

PsdRepair repair_psd(const Eigen::MatrixXd& gram) {
  if (gram.rows() != gram.cols()) {
    throw ShapeError("repair_psd: matrix is not square");
  }
  if ((gram - gram.transpose()).cwiseAbs().maxCoeff() > 1e-10) {
    throw ShapeError("repair_psd: matrix is not symmetric");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(gram,
                                                        Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw ArgumentError("repair_psd: eigenvalue computation failed");
  }
  PsdRepair out;
  const double lambda_min = solver.eigenvalues()(0);  // ascending order
  if (lambda_min >= 0.0) {
    out.matrix = gram;
    out.shift = 0.0;
    return out;
  }
  out.shift = -lambda_min + 1e-8;
  out.matrix = gram + out.shift * Eigen::MatrixXd::Identity(gram.rows(), gram.cols());
  return out;
}

double frobenius_distance(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw ShapeError("frobenius_distance: shape mismatch");
  }
  return (a - b).norm();
}

void write_gram_csv(const std::string& path, const Eigen::MatrixXd& matrix,
                    long shots, std::uint64_t seed) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path);
  out << "n=" << matrix.rows();
  if (matrix.rows() != matrix.cols()) out << ",m=" << matrix.cols();
  out << ",shots=" << shots << ",seed=" << seed << "\n";
  for (Eigen::Index i = 0; i < matrix.rows(); ++i) {
    for (Eigen::Index j = 0; j < matrix.cols(); ++j) {
      if (j) out << ",";
      out << format_double(matrix(i, j));
    }
    out << "\n";
  }
  if (!out) throw IoError("short write to " + path);
}

GramFile read_gram_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read " + path);
  std::string header;
  if (!std::getline(in, header)) throw ParseError(path, 1, "missing header");

  long rows = -1, cols = -1;
  GramFile out;
  std::stringstream hs(header);
  std::string field;
  while (std::getline(hs, field, ',')) {
    const auto eq = field.find('=');
    if (eq == std::string::npos) {
      throw ParseError(path, 1, "malformed header field '" + field + "'");
    }
    const std::string key = field.substr(0, eq);
    const std::string value = field.substr(eq + 1);
    try {
      if (key == "n") {
        rows = std::stol(value);
      } else if (key == "m") {
        cols = std::stol(value);
      } else if (key == "shots") {
        out.shots = std::stol(value);
      } else if (key == "seed") {
        out.seed = std::stoull(value);
      } else {
        throw ParseError(path, 1, "unknown header key '" + key + "'");
      }
    } catch (const std::logic_error&) {
      throw ParseError(path, 1, "bad value for header key '" + key + "'");
    }
  }
  if (rows < 1) throw ParseError(path, 1, "header lacks a positive n");
  if (cols < 0) cols = rows;

  out.matrix.resize(rows, cols);
  std::string line;
  for (long i = 0; i < rows; ++i) {
    if (!std::getline(in, line)) {
      throw ParseError(path, i + 2, "expected " + std::to_string(rows) +
                                        " rows, file ends at " + std::to_string(i));
    }
    std::stringstream ls(line);
    std::string cell;
    long j = 0;
    while (std::getline(ls, cell, ',')) {
      if (j >= cols) throw ParseError(path, i + 2, "too many columns");
      try {
        std::size_t used = 0;
        out.matrix(i, j) = std::stod(cell, &used);
        if (used != cell.size()) throw std::invalid_argument(cell);
      } catch (const std::logic_error&) {
        throw ParseError(path, i + 2, "bad number '" + cell + "'");
      }
      ++j;
    }
    if (j != cols) {
      throw ParseError(path, i + 2, "expected " + std::to_string(cols) +
                                        " columns, got " + std::to_string(j));
    }
  }
  return out;
}

}  // namespace qktext
