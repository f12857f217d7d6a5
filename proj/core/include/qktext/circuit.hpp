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

#include <complex>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace qktext {

// Dense statevectors above this size are refused.
inline constexpr int kMaxQubits = 12;

// Dense statevector. Qubit 0 is the least-significant bit of the basis
// index; amplitudes are kept unnormalised only transiently inside gates.
struct QuantumState {
  int n_qubits = 0;
  std::vector<std::complex<double>> amps;

  std::size_t dim() const { return amps.size(); }
};

QuantumState zero_state(int n_qubits);

double norm_squared(const QuantumState& state);

// |<0...0|state>|^2
double zero_probability(const QuantumState& state);

// Marginal probability that `qubit` reads 1.
double one_probability(const QuantumState& state, int qubit);

enum class GateKind { kH, kX, kRy, kRz, kCnot, kCRy };

// One gate. Every supported gate has a single target; CNOT has exactly one
// control and CRy at least one. Angles follow the half-angle convention:
//   RY(t) = [[cos t/2, -sin t/2], [sin t/2, cos t/2]]
//   RZ(t) = diag(e^{-i t/2}, e^{i t/2})
struct Gate {
  GateKind kind = GateKind::kH;
  int target = 0;
  std::vector<int> controls;
  double angle = 0.0;

  static Gate h(int q) { return {GateKind::kH, q, {}, 0.0}; }
  static Gate x(int q) { return {GateKind::kX, q, {}, 0.0}; }
  static Gate ry(int q, double t) { return {GateKind::kRy, q, {}, t}; }
  static Gate rz(int q, double t) { return {GateKind::kRz, q, {}, t}; }
  static Gate cnot(int control, int target) {
    return {GateKind::kCnot, target, {control}, 0.0};
  }
  static Gate cry(std::vector<int> controls, int target, double t) {
    return {GateKind::kCRy, target, std::move(controls), t};
  }
};

// Gate list over a fixed register. add() validates indices once; running a
// circuit therefore never sees an out-of-range gate.
struct Circuit {
  int n_qubits = 0;
  std::vector<Gate> gates;

  explicit Circuit(int n_qubits_);
  void add(Gate gate);
};

// Applies one gate in place. Throws IndexError if the gate does not fit the
// state (circuits built through Circuit::add are always valid).
void apply_gate(QuantumState& state, const Gate& gate);

QuantumState run_circuit(const Circuit& circuit, QuantumState state);

// Reversed gate order, negated rotation angles. H, X and CNOT are their own
// inverses and pass through unchanged.
Circuit adjoint(const Circuit& circuit);

// Basis index -> outcome string, qubit n-1 leftmost.
std::string basis_label(std::size_t index, int n_qubits);

struct MeasurementCounts {
  long shots = 0;
  std::map<std::string, long> counts;
};

// Samples computational-basis outcomes i.i.d. from |amps|^2. Deterministic
// in (state, shots, seed).
MeasurementCounts sample_counts(const QuantumState& state, long shots,
                                std::uint64_t seed);

}  // namespace qktext
