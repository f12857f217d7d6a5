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

#include "qktext/feature_map.hpp"

#include <cmath>
#include <string>

#include "qktext/errors.hpp"

namespace qktext {

namespace {

constexpr double kPi = 3.14159265358979323846;

bool is_power_of_two(Eigen::Index n) { return n >= 1 && (n & (n - 1)) == 0; }

}  // namespace

FeatureVector pad_and_normalize(const FeatureVector& v, int n_qubits) {
  if (n_qubits < 1 || n_qubits > kMaxQubits) {
    throw CapacityError("pad_and_normalize: n_qubits must be in [1, " +
                        std::to_string(kMaxQubits) + "], got " +
                        std::to_string(n_qubits));
  }
  const Eigen::Index dim = Eigen::Index{1} << n_qubits;
  if (v.size() < 1 || v.size() > dim) {
    throw ShapeError("pad_and_normalize: input of length " +
                     std::to_string(v.size()) + " does not fit " +
                     std::to_string(n_qubits) + " qubits");
  }
  const double norm = v.norm();
  if (norm == 0.0) {
    throw DegenerateInputError("pad_and_normalize: zero vector");
  }
  FeatureVector out = FeatureVector::Zero(dim);
  out.head(v.size()) = v / norm;
  return out;
}

AngleTree build_angle_tree(const FeatureVector& unit) {
  if (!is_power_of_two(unit.size()) || unit.size() < 2) {
    throw ArgumentError("build_angle_tree: length must be a power of two >= 2, got " +
                        std::to_string(unit.size()));
  }
  if (std::abs(unit.norm() - 1.0) > 1e-9) {
    throw ArgumentError("build_angle_tree: input is not a unit vector");
  }
  int n = 0;
  while ((Eigen::Index{1} << n) < unit.size()) ++n;

  AngleTree tree;
  tree.levels.resize(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    const Eigen::Index span = unit.size() >> k;
    const Eigen::Index nodes = Eigen::Index{1} << k;
    auto& level = tree.levels[static_cast<std::size_t>(k)];
    level.resize(static_cast<std::size_t>(nodes));
    for (Eigen::Index j = 0; j < nodes; ++j) {
      const Eigen::Index base = j * span;
      if (span == 2) {
        level[static_cast<std::size_t>(j)] =
            2.0 * std::atan2(unit[base + 1], unit[base]);
      } else {
        const double left = unit.segment(base, span / 2).norm();
        const double right = unit.segment(base + span / 2, span / 2).norm();
        level[static_cast<std::size_t>(j)] = 2.0 * std::atan2(right, left);
      }
    }
  }
  return tree;
}

Circuit amplitude_circuit(const AngleTree& tree) {
  const int n = tree.n_qubits();
  if (n < 1) throw ArgumentError("amplitude_circuit: empty tree");
  Circuit circuit(n);
  for (int k = 0; k < n; ++k) {
    const auto& level = tree.levels[static_cast<std::size_t>(k)];
    if (level.size() != (std::size_t{1} << k)) {
      throw ShapeError("amplitude_circuit: level " + std::to_string(k) +
                       " holds " + std::to_string(level.size()) +
                       " angles, expected " + std::to_string(1 << k));
    }
    const int target = n - 1 - k;
    for (std::size_t j = 0; j < level.size(); ++j) {
      if (k == 0) {
        circuit.add(Gate::ry(target, level[j]));
        continue;
      }
      // Control pattern: qubit n-1-l must read bit (k-1-l) of the node
      // index. Zero-controls get X-conjugated.
      std::vector<int> controls;
      std::vector<int> flips;
      controls.reserve(static_cast<std::size_t>(k));
      for (int l = 0; l < k; ++l) {
        const int q = n - 1 - l;
        controls.push_back(q);
        if (!((j >> (k - 1 - l)) & 1u)) flips.push_back(q);
      }
      for (int q : flips) circuit.add(Gate::x(q));
      circuit.add(Gate::cry(controls, target, level[j]));
      for (int q : flips) circuit.add(Gate::x(q));
    }
  }
  return circuit;
}

Circuit zz_circuit(const FeatureVector& x, int reps) {
  if (reps < 1) {
    throw ArgumentError("zz_circuit: reps must be >= 1, got " +
                        std::to_string(reps));
  }
  const int n = static_cast<int>(x.size());
  Circuit circuit(n);  // throws CapacityError outside [1, kMaxQubits]
  for (int rep = 0; rep < reps; ++rep) {
    for (int q = 0; q < n; ++q) circuit.add(Gate::h(q));
    for (int q = 0; q < n; ++q) circuit.add(Gate::rz(q, 2.0 * x[q]));
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        circuit.add(Gate::cnot(i, j));
        circuit.add(Gate::rz(j, 2.0 * (kPi - x[i]) * (kPi - x[j])));
        circuit.add(Gate::cnot(i, j));
      }
    }
  }
  return circuit;
}

Circuit feature_circuit(const FeatureMapSpec& spec, const FeatureVector& x) {
  switch (spec.kind) {
    case FeatureMapKind::kAmplitude:
      return amplitude_circuit(build_angle_tree(pad_and_normalize(x, spec.n_qubits)));
    case FeatureMapKind::kZz:
      if (x.size() != spec.n_qubits) {
        throw ShapeError("feature_circuit: ZZ map over " +
                         std::to_string(spec.n_qubits) +
                         " qubits requires inputs of that dimension, got " +
                         std::to_string(x.size()));
      }
      return zz_circuit(x, spec.reps);
  }
  throw ArgumentError("feature_circuit: unknown map kind");
}

ZzScaler ZzScaler::fit(const std::vector<FeatureVector>& train) {
  if (train.empty()) throw ArgumentError("ZzScaler::fit: no training vectors");
  const Eigen::Index dim = train.front().size();
  ZzScaler scaler;
  scaler.lo = train.front();
  scaler.hi = train.front();
  for (const auto& v : train) {
    if (v.size() != dim) {
      throw ShapeError("ZzScaler::fit: inconsistent dimensions");
    }
    scaler.lo = scaler.lo.cwiseMin(v);
    scaler.hi = scaler.hi.cwiseMax(v);
  }
  return scaler;
}

FeatureVector ZzScaler::transform(const FeatureVector& v) const {
  if (v.size() != lo.size()) {
    throw ShapeError("ZzScaler::transform: expected dimension " +
                     std::to_string(lo.size()) + ", got " +
                     std::to_string(v.size()));
  }
  FeatureVector out(v.size());
  for (Eigen::Index d = 0; d < v.size(); ++d) {
    const double span = hi[d] - lo[d];
    if (span == 0.0) {
      out[d] = kPi / 2.0;
      continue;
    }
    const double scaled = (v[d] - lo[d]) / span * kPi;
    out[d] = std::min(kPi, std::max(0.0, scaled));
  }
  return out;
}

}  // namespace qktext
