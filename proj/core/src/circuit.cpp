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

#include "qktext/circuit.hpp"

#include <algorithm>
#include <cmath>

#include "qktext/errors.hpp"
#include "qktext/rng.hpp"

namespace qktext {

QuantumState zero_state(int n_qubits) {
  if (n_qubits < 1 || n_qubits > kMaxQubits) {
    throw CapacityError("zero_state: n_qubits must be in [1, " +
                        std::to_string(kMaxQubits) + "], got " +
                        std::to_string(n_qubits));
  }
  QuantumState state;
  state.n_qubits = n_qubits;
  state.amps.assign(std::size_t{1} << n_qubits, {0.0, 0.0});
  state.amps[0] = {1.0, 0.0};
  return state;
}

double norm_squared(const QuantumState& state) {
  double total = 0.0;
  for (const auto& a : state.amps) total += std::norm(a);
  return total;
}

double zero_probability(const QuantumState& state) {
  if (state.amps.empty()) throw ShapeError("zero_probability: empty state");
  return std::norm(state.amps[0]);
}

double one_probability(const QuantumState& state, int qubit) {
  if (qubit < 0 || qubit >= state.n_qubits) {
    throw IndexError("one_probability: qubit " + std::to_string(qubit) +
                     " out of range for " + std::to_string(state.n_qubits) +
                     " qubits");
  }
  const std::size_t mask = std::size_t{1} << qubit;
  double total = 0.0;
  for (std::size_t i = 0; i < state.amps.size(); ++i) {
    if (i & mask) total += std::norm(state.amps[i]);
  }
  return total;
}

namespace {

void check_gate(const Gate& gate, int n_qubits) {
  auto check_index = [n_qubits](int q, const char* role) {
    if (q < 0 || q >= n_qubits) {
      throw IndexError(std::string(role) + " qubit " + std::to_string(q) +
                       " out of range for " + std::to_string(n_qubits) +
                       " qubits");
    }
  };
  check_index(gate.target, "target");
  for (int c : gate.controls) {
    check_index(c, "control");
    if (c == gate.target) {
      throw IndexError("control qubit " + std::to_string(c) +
                       " coincides with the target");
    }
  }
  for (std::size_t i = 0; i + 1 < gate.controls.size(); ++i) {
    for (std::size_t j = i + 1; j < gate.controls.size(); ++j) {
      if (gate.controls[i] == gate.controls[j]) {
        throw IndexError("duplicate control qubit " +
                         std::to_string(gate.controls[i]));
      }
    }
  }
  switch (gate.kind) {
    case GateKind::kH:
    case GateKind::kX:
    case GateKind::kRy:
    case GateKind::kRz:
      if (!gate.controls.empty()) {
        throw ArgumentError("plain gate carries control qubits");
      }
      break;
    case GateKind::kCnot:
      if (gate.controls.size() != 1) {
        throw ArgumentError("CNOT requires exactly one control");
      }
      break;
    case GateKind::kCRy:
      if (gate.controls.empty()) {
        throw ArgumentError("controlled RY requires at least one control");
      }
      break;
  }
}

std::size_t control_mask(const Gate& gate) {
  std::size_t mask = 0;
  for (int c : gate.controls) mask |= std::size_t{1} << c;
  return mask;
}

// Visits every (|..0..>, |..1..>) amplitude pair split by `target` whose
// index satisfies the control mask.
template <typename PairOp>
void for_each_pair(QuantumState& state, int target, std::size_t cmask,
                   PairOp&& op) {
  const std::size_t tmask = std::size_t{1} << target;
  const std::size_t dim = state.amps.size();
  for (std::size_t i = 0; i < dim; ++i) {
    if (i & tmask) continue;
    if ((i & cmask) != cmask) continue;
    op(state.amps[i], state.amps[i | tmask]);
  }
}

}  // namespace

Circuit::Circuit(int n_qubits_) : n_qubits(n_qubits_) {
  if (n_qubits < 1 || n_qubits > kMaxQubits) {
    throw CapacityError("Circuit: n_qubits must be in [1, " +
                        std::to_string(kMaxQubits) + "], got " +
                        std::to_string(n_qubits));
  }
}

void Circuit::add(Gate gate) {
  check_gate(gate, n_qubits);
  gates.push_back(std::move(gate));
}

void apply_gate(QuantumState& state, const Gate& gate) {
  check_gate(gate, state.n_qubits);
  switch (gate.kind) {
    case GateKind::kH:
      for_each_pair(state, gate.target, 0,
                    [inv_sqrt2 = 0.70710678118654752440](
                        std::complex<double>& a0, std::complex<double>& a1) {
                      const auto t0 = a0, t1 = a1;
                      a0 = inv_sqrt2 * (t0 + t1);
                      a1 = inv_sqrt2 * (t0 - t1);
                    });
      break;
    case GateKind::kX:
      for_each_pair(state, gate.target, 0,
                    [](std::complex<double>& a0, std::complex<double>& a1) {
                      std::swap(a0, a1);
                    });
      break;
    case GateKind::kRy:
    case GateKind::kCRy: {
      const double c = std::cos(gate.angle / 2.0);
      const double s = std::sin(gate.angle / 2.0);
      for_each_pair(state, gate.target, control_mask(gate),
                    [c, s](std::complex<double>& a0, std::complex<double>& a1) {
                      const auto t0 = a0, t1 = a1;
                      a0 = c * t0 - s * t1;
                      a1 = s * t0 + c * t1;
                    });
      break;
    }
    case GateKind::kRz: {
      const std::complex<double> p0 = std::polar(1.0, -gate.angle / 2.0);
      const std::complex<double> p1 = std::polar(1.0, gate.angle / 2.0);
      for_each_pair(state, gate.target, 0,
                    [p0, p1](std::complex<double>& a0, std::complex<double>& a1) {
                      a0 *= p0;
                      a1 *= p1;
                    });
      break;
    }
    case GateKind::kCnot:
      for_each_pair(state, gate.target, control_mask(gate),
                    [](std::complex<double>& a0, std::complex<double>& a1) {
                      std::swap(a0, a1);
                    });
      break;
  }
}

QuantumState run_circuit(const Circuit& circuit, QuantumState state) {
  if (circuit.n_qubits != state.n_qubits) {
    throw ShapeError("run_circuit: circuit has " +
                     std::to_string(circuit.n_qubits) + " qubits, state has " +
                     std::to_string(state.n_qubits));
  }
  for (const Gate& gate : circuit.gates) apply_gate(state, gate);
  return state;
}

Circuit adjoint(const Circuit& circuit) {
  Circuit rev(circuit.n_qubits);
  rev.gates.reserve(circuit.gates.size());
  for (auto it = circuit.gates.rbegin(); it != circuit.gates.rend(); ++it) {
    Gate g = *it;
    if (g.kind == GateKind::kRy || g.kind == GateKind::kRz ||
        g.kind == GateKind::kCRy) {
      g.angle = -g.angle;
    }
    rev.gates.push_back(std::move(g));
  }
  return rev;
}

std::string basis_label(std::size_t index, int n_qubits) {
  std::string label(static_cast<std::size_t>(n_qubits), '0');
  for (int q = 0; q < n_qubits; ++q) {
    if (index & (std::size_t{1} << q)) {
      label[static_cast<std::size_t>(n_qubits - 1 - q)] = '1';
    }
  }
  return label;
}

MeasurementCounts sample_counts(const QuantumState& state, long shots,
                                std::uint64_t seed) {
  if (shots < 1) {
    throw ArgumentError("sample_counts: shots must be >= 1, got " +
                        std::to_string(shots));
  }
  const std::size_t dim = state.amps.size();
  std::vector<double> cdf(dim);
  double acc = 0.0;
  for (std::size_t i = 0; i < dim; ++i) {
    acc += std::norm(state.amps[i]);
    cdf[i] = acc;
  }
  // Scaling the variate by the total mass keeps draws in range even when
  // the state norm drifts a few ulp from 1.
  Rng rng(seed);
  std::vector<long> hits(dim, 0);
  for (long s = 0; s < shots; ++s) {
    const double u = rng.uniform() * acc;
    const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    const std::size_t idx =
        std::min(static_cast<std::size_t>(it - cdf.begin()), dim - 1);
    ++hits[idx];
  }
  MeasurementCounts out;
  out.shots = shots;
  for (std::size_t i = 0; i < dim; ++i) {
    if (hits[i] > 0) out.counts.emplace(basis_label(i, state.n_qubits), hits[i]);
  }
  return out;
}

}  // namespace qktext
