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
#include <vector>

#include "qktext/circuit.hpp"

namespace qktext {

using FeatureVector = Eigen::VectorXd;

enum class FeatureMapKind { kAmplitude, kZz };

struct FeatureMapSpec {
  FeatureMapKind kind = FeatureMapKind::kAmplitude;
  int n_qubits = 1;
  int reps = 2;  // ZZ entangler repetitions; ignored by the amplitude map
};

// Zero-pads v to 2^n_qubits entries and scales to unit norm.
// Throws ShapeError when v is longer than 2^n_qubits and
// DegenerateInputError when v is all zeros.
FeatureVector pad_and_normalize(const FeatureVector& v, int n_qubits);

// Binary-split rotation angles for preparing a real unit vector. levels[k]
// holds the 2^k angles of depth k, root first; every angle lies in
// (-2*pi, 2*pi]. An internal node over halves (L, R) carries
// 2*atan2(|R|, |L|); a leaf over the pair (a, b) carries 2*atan2(b, a), which
// is where sign information enters.
struct AngleTree {
  std::vector<std::vector<double>> levels;

  int n_qubits() const { return static_cast<int>(levels.size()); }
};

// Requires a power-of-two length >= 2 and unit norm within 1e-9.
AngleTree build_angle_tree(const FeatureVector& unit);

// Multiplexed-RY state preparation. The depth-k angles rotate the k-th
// qubit of the cascade (qubit n-1-k; the register fills from the most
// significant qubit down so prepared amplitudes land in index order),
// controlled on the k already-prepared qubits with the node's path as the
// control pattern. Zero-controls are realised by X conjugation. Exactly
// 2^n - 1 rotation gates are emitted, one per tree node.
Circuit amplitude_circuit(const AngleTree& tree);

// Second-order Pauli-Z evolution map over len(x) qubits. Each repetition is
// H on every qubit, RZ(2*x_i) on qubit i, then for every pair i < j the
// sandwich CNOT(i->j), RZ(2*(pi - x_i)*(pi - x_j)) on j, CNOT(i->j).
Circuit zz_circuit(const FeatureVector& x, int reps);

// State-preparation circuit for one input under the given map. Amplitude
// maps accept any dimension up to 2^n_qubits; ZZ maps require the input
// dimension to equal n_qubits.
Circuit feature_circuit(const FeatureMapSpec& spec, const FeatureVector& x);

// Per-dimension affine rescaling into [0, pi], fit on training vectors.
// Transformed values are clamped, so unseen inputs cannot leave the range.
// A dimension that is constant on the training set maps to pi/2.
struct ZzScaler {
  Eigen::VectorXd lo;
  Eigen::VectorXd hi;

  static ZzScaler fit(const std::vector<FeatureVector>& train);
  FeatureVector transform(const FeatureVector& v) const;
};

}  // namespace qktext
